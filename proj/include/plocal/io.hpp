#pragma once

// Input parsing for the command-line tool: group specs, fusion-system specs,
// object collections and configuration files, all as JSON.

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "plocal/corpus.hpp"
#include "plocal/counterexample.hpp"
#include "plocal/saturation.hpp"

namespace plocal {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Files and permutations

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

/// Cycle notation on points 0..n-1, e.g. "(0 1)(2 3)" or "()"; commas are
/// accepted as separators.
inline Perm parse_cycles(const std::string& text, std::size_t degree, const std::string& where) {
  std::vector<std::vector<Point>> cycles;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw ParseError(where + ": " + why + " in cycle string \"" + text + "\" at offset " +
                     std::to_string(i));
  };
  auto skip = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ','))
      ++i;
  };
  skip();
  while (i < text.size()) {
    if (text[i] != '(') fail("expected '('");
    ++i;
    std::vector<Point> c;
    for (;;) {
      skip();
      if (i >= text.size()) fail("unterminated cycle");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) fail("expected a point");
      std::size_t v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        v = v * 10 + std::size_t(text[i++] - '0');
      if (v >= degree) fail("point " + std::to_string(v) + " outside degree " + std::to_string(degree));
      c.push_back(Point(v));
    }
    std::vector<Point> sorted = c;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) fail("repeated point");
    if (!c.empty()) cycles.push_back(std::move(c));
    skip();
  }
  for (std::size_t a = 0; a < cycles.size(); ++a)
    for (std::size_t b = a + 1; b < cycles.size(); ++b)
      for (Point x : cycles[a])
        if (std::find(cycles[b].begin(), cycles[b].end(), x) != cycles[b].end())
          throw ParseError(where + ": cycles are not disjoint in \"" + text + "\"");
  return Perm::from_cycles(degree, cycles);
}

/// A permutation given as an image array or a cycle string.
inline Perm parse_perm(const json& j, std::size_t degree, const std::string& where) {
  if (j.is_string()) return parse_cycles(j.get<std::string>(), degree, where);
  if (!j.is_array()) throw ParseError(where + ": expected an image array or a cycle string");
  std::vector<Point> img;
  for (std::size_t k = 0; k < j.size(); ++k) {
    if (!j[k].is_number_unsigned())
      throw ParseError(where + "[" + std::to_string(k) + "]: expected a nonnegative integer");
    img.push_back(j[k].get<Point>());
  }
  if (img.size() != degree)
    throw ParseError(where + ": image array has length " + std::to_string(img.size()) +
                     ", expected degree " + std::to_string(degree));
  try {
    return Perm(std::move(img));
  } catch (const InvalidPermutation& e) {
    throw ParseError(where + ": " + e.what());
  }
}

inline json perm_json(const Perm& p) { return json(p.images()); }

/// Subgroup summary: order and generators as image arrays.
inline json subgroup_json(const Subgroup& H) {
  json gens = json::array();
  for (Elem g : H.generators()) gens.push_back(perm_json(H.parent()->element(g)));
  return json{{"order", H.order()}, {"generators", gens}};
}

/// Canonical member list, sorted by image array.
inline json members_json(const Subgroup& H) {
  json m = json::array();
  for (Elem x : H.members()) m.push_back(perm_json(H.parent()->element(x)));
  return m;
}

// ---------------------------------------------------------------------------
// Groups

template <class T>
T require_field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(where + ": missing field \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ParseError(where + "." + key + ": wrong type");
  }
}

/// {"name": optional, "degree": n, "generators": [perm, ...]}
inline GroupPtr parse_group(const json& j, const Limits& limits, const std::string& where) {
  const auto degree = require_field<std::size_t>(j, "degree", where);
  if (degree == 0) throw ParseError(where + ".degree: must be positive");
  if (!j.contains("generators") || !j["generators"].is_array())
    throw ParseError(where + ": missing array field \"generators\"");
  std::vector<Perm> gens;
  for (std::size_t k = 0; k < j["generators"].size(); ++k)
    gens.push_back(parse_perm(j["generators"][k], degree, where + ".generators[" + std::to_string(k) + "]"));
  std::string name = j.value("name", std::string{});
  return FiniteGroup::generate(degree, std::move(gens), limits, std::move(name));
}

/// Subgroup of G generated by listed elements (generators or a member list).
inline Subgroup parse_subgroup(const json& j, const GroupPtr& G, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected a list of permutations");
  std::vector<Elem> idx;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string w = where + "[" + std::to_string(k) + "]";
    auto e = G->find(parse_perm(j[k], G->degree(), w));
    if (!e) throw ParseError(w + ": element is not in the group");
    idx.push_back(*e);
  }
  return Subgroup::generated(G, std::span<const Elem>(idx));
}

// ---------------------------------------------------------------------------
// Fusion systems

/// A fusion system ready for the commands, with optional named subgroups and
/// a focus set used in place of the full lattice when that is out of reach.
struct LoadedSystem {
  std::string name;
  FusionPtr F;
  /// Ambient group when the system comes from a group.
  GroupPtr G;
  std::map<std::string, Subgroup> named;
  std::vector<Subgroup> focus;

  std::string name_of(const Subgroup& P) const {
    for (const auto& [n, Q] : named)
      if (Q == P) return n;
    return {};
  }
};

/// Extends a partial assignment on generators to the subgroup they
/// generate, checking consistency.
inline GroupMono extend_pairs(const Subgroup& domain, const Subgroup& codomain,
                              const std::vector<std::pair<Elem, Elem>>& pairs, const std::string& where) {
  const auto& g = *domain.parent();
  std::map<Elem, Elem> m{{FiniteGroup::identity(), FiniteGroup::identity()}};
  std::vector<Elem> frontier{FiniteGroup::identity()};
  while (!frontier.empty()) {
    std::vector<Elem> next;
    for (Elem a : frontier)
      for (auto [x, y] : pairs) {
        Elem ax = g.mul(a, x), ay = g.mul(m[a], y);
        auto [it, fresh] = m.emplace(ax, ay);
        if (fresh)
          next.push_back(ax);
        else if (it->second != ay)
          throw NotAHomomorphism(where + ": the listed pairs do not define a homomorphism");
      }
    frontier = std::move(next);
  }
  if (m.size() != domain.order())
    throw NotAHomomorphism(where + ": the pairs do not generate the domain");
  std::vector<Elem> images;
  for (Elem x : domain.members()) images.push_back(m.at(x));
  return GroupMono::checked(domain, codomain, std::move(images));
}

inline std::size_t parse_prime(const json& j, const std::string& where) {
  const auto p = require_field<std::size_t>(j, "p", where);
  if (p < 2) throw ParseError(where + ".p: not a prime");
  for (std::size_t d = 2; d * d <= p; ++d)
    if (p % d == 0) throw ParseError(where + ".p: not a prime");
  return p;
}

inline void parse_named(const json& j, LoadedSystem& sys, const std::string& where) {
  if (j.contains("subgroups")) {
    if (!j["subgroups"].is_object()) throw ParseError(where + ".subgroups: expected an object");
    for (const auto& [k, v] : j["subgroups"].items()) {
      Subgroup PG = parse_subgroup(v, sys.G ? sys.G : sys.F->S(), where + ".subgroups." + k);
      if (sys.G) {
        if (!PG.is_subgroup_of(sys.F->to_ambient(sys.F->whole())))
          throw ParseError(where + ".subgroups." + k + ": not contained in the Sylow subgroup");
        PG = sys.F->from_ambient(PG);
      }
      sys.named.emplace(k, PG);
    }
  }
  if (j.contains("focus")) {
    for (const auto& f : j["focus"]) {
      const auto n = f.get<std::string>();
      if (!sys.named.contains(n)) throw ParseError(where + ".focus: unknown subgroup name \"" + n + "\"");
      sys.focus.push_back(sys.named.at(n));
    }
  }
}

/// kinds: "group" (F_S(G) on a Sylow p-subgroup), "p-group" (F_S(S)) and
/// "generated" (morphisms listed as {domain: [...], map: [[x, y], ...]}).
inline LoadedSystem parse_system(const json& j, const Limits& limits, const std::string& where) {
  LoadedSystem sys;
  const auto kind = require_field<std::string>(j, "kind", where);
  const std::size_t p = parse_prime(j, where);
  if (!j.contains("group")) throw ParseError(where + ": missing field \"group\"");
  GroupPtr G = parse_group(j["group"], limits, where + ".group");
  sys.name = j.value("name", G->name().empty() ? kind : G->name());
  if (kind == "group") {
    sys.G = G;
    sys.F = fusion_of_group(G, sylow_p(G, p), p, limits);
  } else if (kind == "p-group" || kind == "generated") {
    std::size_t n = G->order();
    while (n % p == 0) n /= p;
    if (n != 1) throw NotSylow(where + ".group: order " + std::to_string(G->order()) + " is not a power of " + std::to_string(p));
    if (kind == "p-group") {
      sys.F = FusionSystem::of_group(G, Subgroup::whole(G), p, limits);
    } else {
      const Subgroup S = Subgroup::whole(G);
      std::vector<GroupMono> gens;
      const json& ms = j.contains("morphisms") ? j["morphisms"] : json::array();
      for (std::size_t k = 0; k < ms.size(); ++k) {
        const std::string w = where + ".morphisms[" + std::to_string(k) + "]";
        Subgroup D = parse_subgroup(ms[k].contains("domain") ? ms[k]["domain"] : json(), G, w + ".domain");
        if (!ms[k].contains("map") || !ms[k]["map"].is_array()) throw ParseError(w + ": missing array field \"map\"");
        std::vector<std::pair<Elem, Elem>> pairs;
        for (std::size_t t = 0; t < ms[k]["map"].size(); ++t) {
          const json& pr = ms[k]["map"][t];
          const std::string wt = w + ".map[" + std::to_string(t) + "]";
          if (!pr.is_array() || pr.size() != 2) throw ParseError(wt + ": expected a pair");
          auto x = G->find(parse_perm(pr[0], G->degree(), wt + "[0]"));
          auto y = G->find(parse_perm(pr[1], G->degree(), wt + "[1]"));
          if (!x || !y) throw ParseError(wt + ": element is not in S");
          if (!D.contains(*x)) throw ParseError(wt + "[0]: not in the domain");
          pairs.emplace_back(*x, *y);
        }
        gens.push_back(extend_pairs(D, S, pairs, w));
      }
      FusionOptions opt;
      opt.limits = limits;
      opt.inverse_closure = j.value("inverse_closure", false);
      sys.F = generated_fusion_system(G, p, std::move(gens), opt);
    }
  } else {
    throw ParseError(where + ".kind: unknown kind \"" + kind + "\"");
  }
  sys.named.emplace("S", sys.F->whole());
  parse_named(j, sys, where);
  return sys;
}

/// Re-enumerates a built-in group under the configured element bound.
inline GroupPtr bounded(const GroupPtr& G, const Limits& limits) {
  return FiniteGroup::generate(G->degree(), G->generators(), limits, G->name());
}

inline std::vector<std::string> builtin_system_names() {
  std::vector<std::string> v;
  for (const auto& r : group_recipes()) v.push_back(r.name);
  for (const char* n : {"counterexample", "D8", "C4", "C2", "trivial"}) v.push_back(n);
  return v;
}

inline void require_file(const std::string& spec) {
  if (std::filesystem::exists(spec)) return;
  std::string names;
  for (const auto& n : builtin_system_names()) names += (names.empty() ? "" : ", ") + n;
  throw ParseError("'" + spec + "' is neither a file nor a built-in name (" + names + ")");
}

/// A built-in system by name, or a JSON file.
inline LoadedSystem load_system(const std::string& spec, const Limits& limits) {
  for (const auto& r : group_recipes())
    if (r.name == spec) {
      auto gs = make_group_system(r.name, bounded(r.group(), limits), r.p, limits);
      LoadedSystem sys{gs.name, gs.F, gs.G, {{"S", gs.F->whole()}}, {}};
      return sys;
    }
  if (spec == "counterexample") {
    Counterexample c = build_counterexample(limits);
    LoadedSystem sys{spec, c.F, nullptr, {{"S", c.S}, {"P", c.P}, {"Q1", c.Q1}, {"Q2", c.Q2}, {"Q3", c.Q3}},
                     c.focus()};
    return sys;
  }
  GroupPtr S;
  if (spec == "D8") S = groups::dihedral8();
  if (spec == "C4") S = groups::cyclic(4);
  if (spec == "C2") S = groups::cyclic(2);
  if (spec == "trivial") S = groups::cyclic(1);
  if (S) {
    FusionPtr F = FusionSystem::of_group(S, Subgroup::whole(S), 2, limits);
    return LoadedSystem{spec, F, S, {{"S", F->whole()}}, {}};
  }
  require_file(spec);
  return parse_system(read_json_file(spec), limits, spec);
}

/// A group by built-in name or JSON file (group spec, or a system spec whose
/// "group" field is used).
inline GroupPtr load_group(const std::string& spec, const Limits& limits) {
  for (const auto& r : group_recipes())
    if (r.name == spec) return bounded(r.group(), limits);
  if (spec == "D8") return groups::dihedral8();
  if (spec == "C4") return groups::cyclic(4);
  if (spec == "C2") return groups::cyclic(2);
  if (spec == "trivial") return groups::cyclic(1);
  if (spec == "counterexample") return counterexample_ambient(build_counterexample(limits), limits);
  require_file(spec);
  json j = read_json_file(spec);
  if (j.contains("group")) return parse_group(j["group"], limits, spec + ".group");
  return parse_group(j, limits, spec);
}

// ---------------------------------------------------------------------------
// Object collections

/// The subgroups the commands quantify over: the full lattice, or the
/// classes of the focus set when one is configured.
inline std::vector<Subgroup> universe(const LoadedSystem& sys) {
  if (sys.focus.empty()) return sys.F->subgroups();
  std::vector<Subgroup> out;
  for (const auto& P : sys.focus)
    for (const auto& Q : sys.F->conjugacy_class(P)) out.push_back(Q);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// "all", "centric", "centric-radical", "quasicentric", "{A,B,...}" of
/// named subgroups (closed under F-conjugacy), a JSON list of subgroups
/// given by generators, or a file holding such a list.
inline Collection parse_collection(const std::string& spec, const LoadedSystem& sys) {
  const FusionSystem& F = *sys.F;
  auto filter = [&](auto pred) {
    std::vector<Subgroup> out;
    for (const auto& P : universe(sys))
      if (pred(P)) out.push_back(P);
    return Collection(F, std::move(out));
  };
  if (spec == "all") return filter([](const Subgroup&) { return true; });
  if (spec == "centric") return filter([&](const Subgroup& P) { return is_centric(F, P); });
  if (spec == "centric-radical")
    return filter([&](const Subgroup& P) { return is_centric(F, P) && is_radical(F, P); });
  if (spec == "quasicentric") return filter([&](const Subgroup& P) { return is_quasicentric(sys.F, P); });
  if (!spec.empty() && spec.front() == '{') {
    if (spec.back() != '}') throw ParseError("collection \"" + spec + "\": missing '}'");
    std::vector<Subgroup> seeds;
    std::stringstream ss(spec.substr(1, spec.size() - 2));
    std::string item;
    while (std::getline(ss, item, ',')) {
      item.erase(0, item.find_first_not_of(" \t"));
      item.erase(item.find_last_not_of(" \t") + 1);
      if (item.empty()) continue;
      if (!sys.named.contains(item)) throw ParseError("collection \"" + spec + "\": unknown subgroup \"" + item + "\"");
      seeds.push_back(sys.named.at(item));
    }
    if (seeds.empty()) throw ParseError("collection \"" + spec + "\" is empty");
    return class_closure(F, seeds);
  }
  json j;
  if (!spec.empty() && spec.front() == '[') {
    try {
      j = json::parse(spec);
    } catch (const json::parse_error& e) {
      throw ParseError("collection: " + std::string(e.what()));
    }
  } else {
    j = read_json_file(spec);
  }
  if (!j.is_array()) throw ParseError("collection " + spec + ": expected a list of subgroups");
  std::vector<Subgroup> subs;
  for (std::size_t k = 0; k < j.size(); ++k)
    subs.push_back(parse_subgroup(j[k], F.S(), "collection[" + std::to_string(k) + "]"));
  return Collection(F, std::move(subs));
}

// ---------------------------------------------------------------------------
// Configuration

struct Config {
  Limits limits;
  std::uint64_t seed = 20240601;
  std::vector<std::string> focus;
};

/// {"element_bound", "lattice_bound", "closure_bound", "seed", "focus"};
/// every field is optional.
inline Config parse_config(const json& j, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  Config c;
  auto num = [&](const char* key, std::size_t& out) {
    if (!j.contains(key)) return;
    if (!j[key].is_number_unsigned()) throw ParseError(where + "." + key + ": expected a nonnegative integer");
    out = j[key].get<std::size_t>();
  };
  num("element_bound", c.limits.element_bound);
  num("lattice_bound", c.limits.lattice_bound);
  num("closure_bound", c.limits.closure_bound);
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw ParseError(where + ".seed: expected a nonnegative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("focus")) c.focus = j["focus"].get<std::vector<std::string>>();
  return c;
}

}  // namespace plocal
