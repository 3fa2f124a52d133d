// Command-line front end. Reports go to stdout as JSON, diagnostics to
// stderr.

#include <iostream>

#include <CLI11.hpp>

#include "plocal/cli.hpp"

using namespace plocal;

namespace {

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return "parse";
  if (dynamic_cast<const BoundExceeded*>(&e)) return "bound-exceeded";
  if (dynamic_cast<const NotAHomomorphism*>(&e)) return "not-a-homomorphism";
  if (dynamic_cast<const InvalidPermutation*>(&e)) return "invalid-permutation";
  if (dynamic_cast<const NotSylow*>(&e)) return "not-sylow";
  if (dynamic_cast<const NotNormal*>(&e)) return "not-normal";
  if (dynamic_cast<const ContainmentViolation*>(&e)) return "containment";
  if (dynamic_cast<const Error*>(&e)) return "error";
  return "internal";
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fusion and linking systems over finite p-groups"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, focus_flag;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> bound_elements, bound_lattice, bound_closure;
  app.add_option("--config", config_path, "JSON configuration file")->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "seed for randomized checks");
  app.add_option("--bound-elements", bound_elements, "maximum group order enumerated");
  app.add_option("--bound-lattice", bound_lattice, "maximum |S| whose subgroup lattice is enumerated");
  app.add_option("--bound-closure", bound_closure, "maximum size of generated morphism sets");
  app.add_option("--focus", focus_flag, "comma-separated named subgroups whose classes replace the lattice");

  std::string target, collection;
  std::size_t prime = 2;
  bool dump = false;
  std::string chain = "centric-radical,centric,quasicentric";
  unsigned jobs = 0;

  auto* info = app.add_subcommand("group-info", "order, Sylow subgroup and p-local cores of a group");
  info->add_option("group", target, "corpus name or group file")->required();
  info->add_option("-p,--prime", prime, "the prime")->capture_default_str();

  auto* cls = app.add_subcommand("classify", "F-classes with centric, radical and quasicentric flags");
  cls->add_option("system", target, "corpus name or system file")->required();

  auto* sat = app.add_subcommand("saturate", "axioms I and II on a collection");
  sat->add_option("system", target)->required();
  sat->add_option("collection", collection, "all, centric, centric-radical, quasicentric, {A,B}, or JSON")
      ->capture_default_str();

  auto* thm = app.add_subcommand("theorem-a", "hypotheses and conclusion of the H-saturation criterion");
  thm->add_option("system", target)->required();
  thm->add_option("collection", collection)->capture_default_str();

  auto* lnk = app.add_subcommand("linking", "transporter linking category and its axioms");
  lnk->add_option("system", target)->required();
  lnk->add_option("objects", collection)->capture_default_str();
  lnk->add_flag("--dump", dump, "include objects and morphisms");

  auto* mdl = app.add_subcommand("model", "realize a constrained system by a finite group");
  mdl->add_option("system", target)->required();

  auto* nrv = app.add_subcommand("nerve-h1", "first homology of the nerve across object sets");
  nrv->add_option("system", target)->required();
  nrv->add_option("--chain", chain, "comma-separated collections")->capture_default_str();

  auto* run = app.add_subcommand("corpus-run", "check every built-in expectation");
  run->add_option("--jobs", jobs, "worker threads (0 = one per core)");

  CLI11_PARSE(app, argc, argv);

  try {
    Config cfg;
    if (!config_path.empty()) cfg = parse_config(read_json_file(config_path), config_path);
    if (seed) cfg.seed = *seed;
    if (bound_elements) cfg.limits.element_bound = *bound_elements;
    if (bound_lattice) cfg.limits.lattice_bound = *bound_lattice;
    if (bound_closure) cfg.limits.closure_bound = *bound_closure;
    if (!focus_flag.empty()) cfg.focus = split_commas(focus_flag);

    auto system = [&] {
      LoadedSystem sys = load_system(target, cfg.limits);
      if (!cfg.focus.empty()) {
        sys.focus.clear();
        for (const auto& n : cfg.focus) {
          if (!sys.named.contains(n)) throw ParseError("--focus: unknown subgroup \"" + n + "\"");
          sys.focus.push_back(sys.named.at(n));
        }
      }
      return sys;
    };

    cli::CommandResult res;
    if (*info) res = cli::group_info(load_group(target, cfg.limits), prime);
    if (*cls) res = cli::classify(system());
    if (*sat) res = cli::saturate(system(), collection.empty() ? "all" : collection);
    if (*thm) res = cli::theorem_a(system(), collection.empty() ? "centric" : collection);
    if (*lnk) res = cli::linking(system(), collection.empty() ? "centric" : collection, dump);
    if (*mdl) res = cli::model(system());
    if (*nrv) res = cli::nerve_h1_chain(system(), split_commas(chain));
    if (*run) res = cli::corpus_run(cfg.limits, cfg.seed, jobs);
    std::cout << res.report.dump(2) << '\n';
    return res.exit_code;
  } catch (const std::exception& e) {
    std::cout << json{{"error", {{"kind", error_kind(e)}, {"message", e.what()}}}}.dump(2) << '\n';
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
