#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "plocal/cli.hpp"

using namespace plocal;

namespace {

std::string write_temp(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / ("plocal_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

struct ToolRun {
  int status = -1;
  std::string out;
};

ToolRun run_tool(const std::string& args) {
  ToolRun r;
  const std::string cmd = std::string(PLOCAL_TOOL) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
  const int st = pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

const std::string kV4 = R"j({"degree": 4, "generators": ["(0 1)(2 3)", [2, 3, 0, 1]]})j";

/// F over V4 generated by the order-3 automorphism cycling its involutions.
const std::string kGeneratedA4 = R"j({
  "kind": "generated", "p": 2, "name": "V4 with a 3-cycle",
  "group": )j" + kV4 + R"j(,
  "morphisms": [{"domain": ["(0 1)(2 3)", "(0 2)(1 3)"],
                 "map": [["(0 1)(2 3)", "(0 2)(1 3)"], ["(0 2)(1 3)", "(0 3)(1 2)"]]}],
  "subgroups": {"A": [[1, 0, 3, 2]]}
})j";

}  // namespace

TEST(Parse, CycleStringsAndImageArraysAgree) {
  EXPECT_EQ(parse_perm(json("(0 1)(2 3)"), 4, "x"), Perm({1, 0, 3, 2}));
  EXPECT_EQ(parse_perm(json("(0,2,1)"), 3, "x"), Perm({2, 0, 1}));
  EXPECT_EQ(parse_perm(json("()"), 3, "x"), Perm::identity(3));
  EXPECT_EQ(parse_perm(json::parse("[2, 0, 1]"), 3, "x"), Perm({2, 0, 1}));
}

TEST(Parse, MalformedPermutationsNameTheField) {
  auto message = [](const json& j, std::size_t n) {
    try {
      parse_perm(j, n, "group.generators[1]");
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(message(json::parse("[0, 0, 1]"), 3).find("group.generators[1]"), std::string::npos);
  EXPECT_NE(message(json::parse("[0, 1]"), 3).find("expected degree 3"), std::string::npos);
  EXPECT_NE(message(json("(0 5)"), 3).find("outside degree"), std::string::npos);
  EXPECT_NE(message(json("(0 1)(1 2)"), 3).find("not disjoint"), std::string::npos);
  EXPECT_NE(message(json("(0 1"), 3).find("unterminated"), std::string::npos);
  EXPECT_NE(message(json::parse("[0, -1, 2]"), 3).find("nonnegative"), std::string::npos);
}

TEST(Parse, GroupSpecErrors) {
  EXPECT_THROW(parse_group(json::parse(R"({"generators": []})"), {}, "g"), ParseError);
  EXPECT_THROW(parse_group(json::parse(R"({"degree": 3})"), {}, "g"), ParseError);
  EXPECT_THROW(parse_group(json::parse(R"({"degree": "3", "generators": []})"), {}, "g"), ParseError);
  const auto bad = write_temp("bad.json", "{\"degree\": 3,\n \"generators\": [[0, 1, 2],]}");
  try {
    read_json_file(bad);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
}

TEST(Parse, TrivialGroupFile) {
  const auto path = write_temp("trivial.json", R"({"name": "one", "degree": 1, "generators": []})");
  auto r = cli::group_info(load_group(path, {}), 2);
  EXPECT_EQ(r.report["order"], 1);
  EXPECT_EQ(r.report["sylow"]["order"], 1);
}

TEST(Parse, GeneratedSystemMatchesA4) {
  const auto path = write_temp("gen.json", kGeneratedA4);
  LoadedSystem sys = load_system(path, {});
  EXPECT_EQ(sys.F->kind(), FusionSystem::Kind::Generated);
  auto a4 = load_system("A4", {});
  // Both systems have a single class of involutions and Aut_F(V4) = C3.
  EXPECT_EQ(sys.F->conjugacy_class(sys.named.at("A")).size(), 3u);
  EXPECT_EQ(aut(*sys.F, sys.F->whole()).group->order(), 3u);
  EXPECT_EQ(aut(*a4.F, a4.F->whole()).group->order(), 3u);
  EXPECT_TRUE(is_saturated(*sys.F).holds());
}

TEST(Parse, InconsistentMorphismIsRejected) {
  std::string text = kGeneratedA4;
  // Both generators sent to the same involution: a homomorphism, but not injective.
  const std::string good = "[\"(0 2)(1 3)\", \"(0 3)(1 2)\"]";
  text.replace(text.find(good), good.size(), "[\"(0 2)(1 3)\", \"(0 2)(1 3)\"]");
  const auto path = write_temp("gen_bad.json", text);
  EXPECT_THROW(load_system(path, {}), NotAHomomorphism);
}

TEST(Parse, Collections) {
  LoadedSystem s4 = load_system("S4", {});
  EXPECT_EQ(parse_collection("all", s4).size(), 10u);
  EXPECT_EQ(parse_collection("centric", s4).size(), 4u);
  EXPECT_EQ(parse_collection("{S}", s4).size(), 1u);
  EXPECT_EQ(parse_collection(R"j([["(0 1)(2 3)", "(0 2)(1 3)"]])j", s4).size(), 1u);
  EXPECT_THROW(parse_collection("{Nope}", s4), ParseError);
  EXPECT_THROW(parse_collection("[[\"(0 1 2)\"]]", s4), ParseError);
}

TEST(Parse, Config) {
  Config c = parse_config(json::parse(R"({"lattice_bound": 64, "seed": 5, "focus": ["S"]})"), "cfg");
  EXPECT_EQ(c.limits.lattice_bound, 64u);
  EXPECT_EQ(c.limits.element_bound, Limits{}.element_bound);
  EXPECT_EQ(c.seed, 5u);
  EXPECT_EQ(c.focus, std::vector<std::string>{"S"});
  EXPECT_THROW(parse_config(json::parse(R"({"seed": -1})"), "cfg"), ParseError);
}

TEST(Commands, GroupInfo) {
  auto s4 = cli::group_info(load_group("S4", {}), 2).report;
  EXPECT_EQ(s4["order"], 24);
  EXPECT_EQ(s4["sylow"]["order"], 8);
  EXPECT_EQ(s4["O_p"], 4);
  EXPECT_EQ(cli::group_info(load_group("A5", {}), 2).report["sylow"]["order"], 4);
  EXPECT_EQ(cli::group_info(load_group("A4", {}), 3).report["sylow"]["order"], 3);
  EXPECT_THROW(cli::group_info(load_group("S4", {}), 4), ParseError);
}

TEST(Commands, SaturateStandaloneD8) {
  auto r = cli::saturate(load_system("D8", {}), "all");
  EXPECT_EQ(r.report["verdict"], "saturated");
  EXPECT_EQ(r.exit_code, 0);
}

TEST(Commands, TheoremASummaryOnCounterexample) {
  auto sys = load_system("counterexample", {});
  auto r = cli::theorem_a(sys, "{S,Q1,Q2,Q3}").report;
  EXPECT_EQ(r["summary"], "(*) fails at class of P; F not saturated");
  EXPECT_EQ(r["scope"], "focus");
  EXPECT_EQ(r["hypotheses"]["H_saturated"], true);
  EXPECT_EQ(r["violation"], false);
}

TEST(Commands, TheoremAOnCorpus) {
  auto r = cli::theorem_a(load_system("S5", {}), "centric-radical").report;
  EXPECT_EQ(r["summary"], "hypotheses hold; F saturated");
}

TEST(Commands, ClassifyS4) {
  auto r = cli::classify(load_system("S4", {})).report;
  EXPECT_EQ(r["class_count"], 7);
  EXPECT_EQ(r["subgroup_count"], 10);
  EXPECT_EQ(r["constrained"], true);
  std::size_t centric = 0;
  for (const auto& c : r["classes"]) centric += c["centric"].get<bool>();
  EXPECT_EQ(centric, 4u);
}

TEST(Commands, LinkingDump) {
  auto r = cli::linking(load_system("S4", {}), "centric", true).report;
  EXPECT_EQ(r["axioms_hold"], true);
  EXPECT_EQ(r["objects"].size(), 4u);
  EXPECT_EQ(r["morphisms"].size(), r["morphism_count"].get<std::size_t>());
  EXPECT_EQ(r["morphism_count"], 88);
  EXPECT_THROW(cli::linking(load_system("counterexample", {}), "{S}", false), Error);
}

TEST(Commands, ModelAndNerve) {
  EXPECT_EQ(cli::model(load_system("A5", {})).report["model"]["order"], 12);
  EXPECT_THROW(cli::model(load_system("A6", {})), Error);
  auto h = cli::nerve_h1_chain(load_system("A4", {}), {"centric-radical", "centric", "quasicentric", "all"}).report;
  EXPECT_EQ(h["valid_count"], 3);
  EXPECT_EQ(h["all_equal"], true);
  EXPECT_EQ(h["entries"][0]["H1"], "Z/3");
  EXPECT_EQ(h["entries"][3]["valid"], false);
}

TEST(Commands, ReportsAreDeterministic) {
  for (int i = 0; i < 2; ++i) {
    EXPECT_EQ(cli::classify(load_system("Sym6", {})).report.dump(),
              cli::classify(load_system("Sym6", {})).report.dump());
    EXPECT_EQ(cli::linking(load_system("S4", {}), "quasicentric", true).report.dump(),
              cli::linking(load_system("S4", {}), "quasicentric", true).report.dump());
  }
}

TEST(Tool, CorpusRunPassesAndIsByteIdentical) {
  ToolRun a = run_tool("corpus-run");
  ToolRun b = run_tool("corpus-run --jobs 2");
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  json j = json::parse(a.out);
  EXPECT_EQ(j["failed"], 0);
  EXPECT_EQ(j["errors"], 0);
  std::vector<std::string> names;
  for (const auto& e : j["entries"]) names.push_back(e["name"]);
  EXPECT_TRUE(std::is_sorted(names.begin(), names.end()));
}

TEST(Tool, ErrorsExitWithStatusTwo) {
  const auto bad = write_temp("tool_bad.json", R"({"degree": 3, "generators": [[0, 0, 1]]})");
  ToolRun r = run_tool("group-info " + bad);
  EXPECT_EQ(r.status, 2);
  EXPECT_EQ(json::parse(r.out)["error"]["kind"], "parse");
  EXPECT_EQ(run_tool("group-info missing_file.json").status, 2);
  ToolRun big = run_tool("--bound-elements 100 group-info S5");
  EXPECT_EQ(big.status, 2);
  EXPECT_EQ(json::parse(big.out)["error"]["kind"], "bound-exceeded");
}

TEST(Tool, FlagsReachTheCommands) {
  ToolRun r = run_tool("--focus S,Q1 theorem-a counterexample {S,Q1,Q2,Q3}");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(json::parse(r.out)["scope"], "focus");
  ToolRun s = run_tool("saturate D8 all");
  EXPECT_EQ(json::parse(s.out)["verdict"], "saturated");
}
