#pragma once

// Command implementations behind the `plocal` tool. Each command returns a
// JSON report and an exit status; the executable only parses arguments and
// prints.

#include <atomic>
#include <thread>

#include "plocal/io.hpp"
#include "plocal/linking.hpp"
#include "plocal/nerve.hpp"

namespace plocal::cli {

struct CommandResult {
  json report;
  int exit_code = 0;
};

inline std::string verdict_word(bool saturated) { return saturated ? "saturated" : "not saturated"; }

/// Short label: the configured name when there is one, else the order.
inline std::string label(const LoadedSystem& sys, const Subgroup& P) {
  std::string n = sys.name_of(P);
  if (!n.empty()) return n;
  for (const auto& [name, Q] : sys.named)
    for (const auto& R : sys.F->conjugacy_class(Q))
      if (R == P) return "conjugate of " + name;
  return "subgroup of order " + std::to_string(P.order());
}

/// Name of a configured subgroup in the F-class of P, else the plain label.
inline std::string class_label(const LoadedSystem& sys, const Subgroup& P) {
  for (const auto& [name, Q] : sys.named)
    if (Q.order() == P.order())
      for (const auto& R : sys.F->conjugacy_class(Q))
        if (R == P) return name;
  return label(sys, P);
}

inline json subgroup_entry(const LoadedSystem& sys, const Subgroup& P) {
  json j = subgroup_json(P);
  std::string n = sys.name_of(P);
  if (!n.empty()) j["name"] = n;
  return j;
}

inline std::string scope_of(const LoadedSystem& sys) { return sys.focus.empty() ? "lattice" : "focus"; }

/// F-class representatives of the quantified subgroups, fully normalized,
/// ordered by order and then canonically.
inline std::vector<Subgroup> class_reps(const LoadedSystem& sys) {
  std::vector<Subgroup> reps;
  std::unordered_set<Subgroup, SubgroupHash> seen;
  for (const auto& P : universe(sys)) {
    if (seen.contains(P)) continue;
    for (const auto& Q : sys.F->conjugacy_class(P)) seen.insert(Q);
    reps.push_back(sys.F->fully_normalized_representative(P));
  }
  std::sort(reps.begin(), reps.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a < b;
  });
  return reps;
}

inline json verdict_json(const LoadedSystem& sys, const Verdict& v) {
  json j{{"condition", v.condition}, {"holds", v.holds}, {"vacuous", v.vacuous}, {"cases", v.cases}};
  if (v.subgroup) {
    j["subgroup"] = subgroup_entry(sys, *v.subgroup);
    j["subgroup_label"] = label(sys, *v.subgroup);
  }
  if (v.morphism) {
    json m = json::array();
    for (std::size_t k = 0; k < v.morphism->domain().members().size(); ++k) {
      const auto& g = *v.morphism->domain().parent();
      m.push_back(json::array({perm_json(g.element(v.morphism->domain().members()[k])),
                               perm_json(g.element(v.morphism->images()[k]))}));
    }
    j["morphism"] = m;
  }
  if (!v.detail.empty()) j["detail"] = v.detail;
  return j;
}

inline json saturation_json(const LoadedSystem& sys, const SaturationReport& r) {
  json j{{"saturated", r.holds()}, {"conjugacy_closed", r.conjugacy_closed}, {"checked", r.checked()}};
  if (const Verdict* f = r.first_failure()) j["first_failure"] = verdict_json(sys, *f);
  return j;
}

// ---------------------------------------------------------------------------
// group-info

inline CommandResult group_info(const GroupPtr& G, std::size_t p) {
  if (!is_prime(p)) throw ParseError("p = " + std::to_string(p) + " is not a prime");
  Subgroup S = sylow_p(G, p);
  json r;
  r["command"] = "group-info";
  if (!G->name().empty()) r["name"] = G->name();
  r["degree"] = G->degree();
  r["order"] = G->order();
  r["p"] = p;
  r["sylow"] = subgroup_json(S);
  r["O_p"] = p_core(G, p).order();
  r["O_p'"] = p_prime_core(G, p).order();
  r["O^p"] = p_residual(G, p).order();
  r["abelian"] = is_abelian(Subgroup::whole(G));
  return {r, 0};
}

// ---------------------------------------------------------------------------
// classify

inline CommandResult classify(const LoadedSystem& sys) {
  const FusionSystem& F = *sys.F;
  json r;
  r["command"] = "classify";
  r["system"] = sys.name;
  r["p"] = F.prime();
  r["order_S"] = F.S()->order();
  r["scope"] = scope_of(sys);
  const auto reps = class_reps(sys);
  json classes = json::array();
  for (const auto& P : reps) {
    OutGroup o = out(F, P);
    json c = subgroup_entry(sys, P);
    c["label"] = label(sys, P);
    c["class_size"] = F.conjugacy_class(P).size();
    c["aut_F"] = o.aut.group->order();
    c["out_F"] = o.quotient.group->order();
    c["centric"] = is_centric(F, P);
    c["radical"] = is_radical(F, P);
    c["quasicentric"] = is_quasicentric(sys.F, P);
    c["star_witness"] = condition_star_witness(F, P);
    classes.push_back(std::move(c));
  }
  r["class_count"] = reps.size();
  r["classes"] = classes;
  if (sys.focus.empty()) {
    r["subgroup_count"] = F.subgroups().size();
    Subgroup O = maximal_normal_subgroup(F);
    r["O_p(F)"] = subgroup_json(O);
    r["constrained"] = is_centric(F, O);
  }
  return {r, 0};
}

// ---------------------------------------------------------------------------
// saturate

inline CommandResult saturate(const LoadedSystem& sys, const std::string& h_spec) {
  Collection H = parse_collection(h_spec, sys);
  json r;
  r["command"] = "saturate";
  r["system"] = sys.name;
  r["collection"] = h_spec;
  r["scope"] = scope_of(sys);
  r["collection_size"] = H.size();
  const SaturationReport s = is_H_saturated(*sys.F, H);
  r.update(saturation_json(sys, s));
  r["verdict"] = verdict_word(s.holds());
  return {r, 0};
}

// ---------------------------------------------------------------------------
// theorem-a

/// One line: which hypotheses fail (naming the failing (*) classes) and the
/// saturation verdict.
inline std::string harness_summary(const LoadedSystem& sys, const TheoremHarnessReport& h) {
  if (h.violation()) return "violation: all hypotheses hold but F is not saturated";
  std::vector<std::string> parts;
  if (!h.h_conjugacy_closed) parts.push_back("H is not closed under F-conjugacy");
  // (*) implies the centric-radical containment, so a (*) failure subsumes it.
  if (!h.h_contains_centric_radical && h.star_condition) parts.push_back("H misses a centric-radical class");
  if (!h.h_generated) parts.push_back("F is not H-generated");
  if (!h.h_saturated) parts.push_back("F is not H-saturated");
  if (!h.star_condition) {
    std::string at;
    for (const auto& c : h.star_classes)
      if (!c.holds) at += (at.empty() ? "" : ", ") + class_label(sys, c.representative);
    parts.push_back("(*) fails at class of " + at);
  }
  std::string out;
  for (const auto& p : parts) out += p + "; ";
  if (parts.empty()) out = "hypotheses hold; ";
  return out + "F " + verdict_word(h.conclusion_saturated);
}

inline TheoremHarnessReport run_harness(const LoadedSystem& sys, const Collection& H) {
  if (sys.focus.empty()) return theorem_A_harness(sys.F, H);
  return theorem_A_harness(sys.F, H, universe(sys), "focus");
}

inline CommandResult theorem_a(const LoadedSystem& sys, const std::string& h_spec) {
  Collection H = parse_collection(h_spec, sys);
  const TheoremHarnessReport h = run_harness(sys, H);
  json star = json::array();
  for (const auto& c : h.star_classes)
    star.push_back(json{{"label", label(sys, c.representative)},
                        {"order", c.representative.order()},
                        {"holds", c.holds}});
  json r;
  r["command"] = "theorem-a";
  r["system"] = sys.name;
  r["collection"] = h_spec;
  r["scope"] = h.scope;
  r["hypotheses"] = json{{"conjugacy_closed", h.h_conjugacy_closed},
                         {"contains_centric_radical", h.h_contains_centric_radical},
                         {"H_generated", h.h_generated},
                         {"H_saturated", h.h_saturated},
                         {"star", h.star_condition}};
  r["star_classes"] = star;
  r["hypotheses_hold"] = h.hypotheses_hold();
  r["saturated"] = h.conclusion_saturated;
  r["violation"] = h.violation();
  r["summary"] = harness_summary(sys, h);
  return {r, 0};
}

// ---------------------------------------------------------------------------
// linking

inline void require_group_system(const LoadedSystem& sys) {
  if (sys.F->kind() != FusionSystem::Kind::Ambient)
    throw Error("system '" + sys.name + "' has no ambient group; linking needs a group system");
}

inline json clauses_json(const LinkingReport& rep) {
  json out = json::array();
  for (const auto& c : rep.clauses) {
    json j{{"clause", c.clause}, {"holds", c.holds}, {"cases", c.cases}};
    if (!c.witness.empty()) j["witness"] = c.witness;
    out.push_back(std::move(j));
  }
  return out;
}

inline CommandResult linking(const LoadedSystem& sys, const std::string& objects_spec, bool dump) {
  require_group_system(sys);
  Collection H = parse_collection(objects_spec, sys);
  if (H.empty()) throw Error("the object set is empty");
  LinkingCategory L(sys.F, H.members());
  const GroupPtr& G = L.group();
  bool all_centric = true;
  for (const auto& P : L.objects()) all_centric = all_centric && is_centric(*sys.F, P);
  const LinkingReport axioms = all_centric ? verify_centric_axioms(L) : verify_quasicentric_axioms(L);
  json r;
  r["command"] = "linking";
  r["system"] = sys.name;
  r["objects_spec"] = objects_spec;
  r["object_count"] = L.object_count();
  r["morphism_count"] = L.morphism_count();
  r["axiom_family"] = all_centric ? "centric" : "quasicentric";
  r["axioms"] = clauses_json(axioms);
  r["axioms_hold"] = axioms.holds();
  if (dump) {
    json objs = json::array();
    for (std::size_t i = 0; i < L.object_count(); ++i) objs.push_back(members_json(L.ambient_object(i)));
    json mors = json::array();
    for (std::size_t i = 0; i < L.object_count(); ++i)
      for (std::size_t j = 0; j < L.object_count(); ++j)
        for (const auto& f : L.mor(i, j)) mors.push_back(json::array({perm_json(G->element(f.rep)), i, j}));
    r["objects"] = objs;
    r["morphisms"] = mors;
  }
  return {r, 0};
}

// ---------------------------------------------------------------------------
// model

inline CommandResult model(const LoadedSystem& sys) {
  require_group_system(sys);
  ConstrainedModel m = constrained_model(sys.F);
  json gens = json::array();
  for (const auto& g : m.group->generators()) gens.push_back(perm_json(g));
  json r;
  r["command"] = "model";
  r["system"] = sys.name;
  r["O_p(F)"] = subgroup_json(m.witness);
  r["model"] = json{{"order", m.group->order()}, {"degree", m.group->degree()}, {"generators", gens}};
  r["certificate"] = json{{"sylow", m.sylow_ok},
                          {"p_prime_reduced", m.p_prime_reduced},
                          {"p_constrained", m.p_constrained},
                          {"fusion_equal", m.fusion_equal}};
  r["certified"] = m.certified();
  if (!m.certified()) r["failures"] = m.failures();
  return {r, 0};
}

// ---------------------------------------------------------------------------
// nerve-h1

inline CommandResult nerve_h1_chain(const LoadedSystem& sys, const std::vector<std::string>& chain) {
  require_group_system(sys);
  std::vector<std::pair<std::string, Collection>> cols;
  for (const auto& spec : chain) cols.emplace_back(spec, parse_collection(spec, sys));
  const H1InvarianceReport rep = h1_invariance_check(sys.F, cols);
  json entries = json::array();
  for (const auto& e : rep.entries) {
    json j{{"collection", e.label}, {"valid", e.valid}};
    if (e.valid) {
      j["objects"] = e.objects;
      j["generators"] = e.generators;
      j["relations"] = e.relations;
      j["H1"] = e.h1.to_string();
    } else {
      j["skipped"] = e.skipped_reason;
    }
    entries.push_back(std::move(j));
  }
  json r;
  r["command"] = "nerve-h1";
  r["system"] = sys.name;
  r["entries"] = entries;
  r["valid_count"] = rep.valid_count();
  r["all_equal"] = rep.all_equal();
  return {r, 0};
}

// ---------------------------------------------------------------------------
// corpus-run

/// One expected fact: "stated" facts come from the source results,
/// "computed" ones were frozen after an independent computation and
/// "immediate" ones follow from the definitions.
struct Expectation {
  std::string name;
  std::string basis;
  json expected;
  std::function<json()> actual;
};

struct CorpusEntry {
  std::string name;
  std::function<std::vector<Expectation>()> build;
};

inline std::vector<Expectation> group_system_expectations(const std::string& name, const Limits& limits) {
  auto sys = std::make_shared<LoadedSystem>(load_system(name, limits));
  const FusionPtr F = sys->F;
  std::vector<Expectation> e;
  e.push_back({"saturated", "stated", true, [F] { return json(is_saturated(*F).holds()); }});
  for (const char* h : {"centric", "centric-radical"}) {
    e.push_back({std::string("theorem harness, H = ") + h + ": hypotheses hold and F saturated", "stated",
                 true, [sys, h] {
                   auto r = run_harness(*sys, parse_collection(h, *sys));
                   return json(r.hypotheses_hold() && r.conclusion_saturated);
                 }});
  }
  e.push_back({"axiom equivalences on all, centric, centric-radical and single classes", "stated", true, [sys] {
                 std::vector<Collection> hs{parse_collection("all", *sys), parse_collection("centric", *sys),
                                            parse_collection("centric-radical", *sys)};
                 for (const auto& P : class_reps(*sys)) hs.push_back(class_closure(*sys->F, {P}));
                 for (const auto& H : hs)
                   if (!lemma_newax_audit(*sys->F, H).consistent()) return json(false);
                 return json(true);
               }});
  e.push_back({"normal-subgroup characterizations agree", "stated", true, [F] {
                 for (const auto& Q : normal_subgroups_of_S(*F))
                   if (!normal_equivalence_report(*F, Q).consistent()) return json(false);
                 return json(true);
               }});
  e.push_back({"generated by centric-radical automorphisms", "stated", true,
               [F] { return json(is_H_generated(F, centric_radical_collection(*F))); }});
  e.push_back({"centric subgroups are quasicentric", "immediate", true, [F] {
                 for (const auto& P : centric_subgroups(*F))
                   if (!is_quasicentric(F, P)) return json(false);
                 return json(true);
               }});
  return e;
}

inline std::vector<CorpusEntry> corpus_entries(const Limits& limits, std::uint64_t seed) {
  std::vector<CorpusEntry> entries;
  for (const auto& r : group_recipes())
    entries.push_back({r.name, [name = r.name, limits, seed] {
                     auto e = group_system_expectations(name, limits);
                     if (name == "S4") {
                       auto G = load_group("S4", limits);
                       e.push_back({"group order", "immediate", 24, [G] { return json(G->order()); }});
                       e.push_back({"Sylow 2-subgroup order", "computed", 8,
                                    [G] { return json(sylow_p(G, 2).order()); }});
                       e.push_back({"O_2 order", "computed", 4, [G] { return json(p_core(G, 2).order()); }});
                       e.push_back({"H1 of the nerve, centric-radical to quasicentric", "computed", "Z/2", [limits] {
                                      auto rep = h1_invariance_check(load_system("S4", limits).F);
                                      if (rep.valid_count() != 3 || !rep.all_equal()) return json("differs");
                                      return json(rep.entries[0].h1.to_string());
                                    }});
                       e.push_back({"centric linking axioms", "stated", true, [limits] {
                                      return json(verify_centric_axioms(centric_linking(load_system("S4", limits).F)).holds());
                                    }});
                       e.push_back({"quasicentric linking axioms and mono/epi", "stated", true, [limits] {
                                      auto L = quasicentric_linking(load_system("S4", limits).F);
                                      return json(verify_quasicentric_axioms(L).holds() && verify_mono_epi(L).holds() &&
                                                  verify_delta_family(L).holds());
                                    }});
                       e.push_back({"constrained model is S4", "computed", true, [limits] {
                                      auto m = constrained_model(load_system("S4", limits).F);
                                      return json(m.certified() && find_isomorphism(m.group, groups::symmetric(4)).has_value());
                                    }});
                     }
                     if (name == "A4") {
                       e.push_back({"H1 of the nerve, centric-radical to quasicentric", "computed", "Z/3", [limits] {
                                      auto rep = h1_invariance_check(load_system("A4", limits).F);
                                      if (rep.valid_count() != 3 || !rep.all_equal()) return json("differs");
                                      return json(rep.entries[0].h1.to_string());
                                    }});
                     }
                     if (name == "A5") {
                       e.push_back({"Sylow 2-subgroup order", "stated", 4,
                                    [limits] { return json(sylow_p(load_group("A5", limits), 2).order()); }});
                       e.push_back({"constrained model is A4", "stated", true, [limits] {
                                      auto m = constrained_model(load_system("A5", limits).F);
                                      return json(m.certified() && m.group->order() == 12 &&
                                                  find_isomorphism(m.group, groups::alternating(4)).has_value());
                                    }});
                     }
                     if (name == "Sym6") {
                       e.push_back({"centric linking axioms", "stated", true, [limits] {
                                      return json(verify_centric_axioms(centric_linking(load_system("Sym6", limits).F)).holds());
                                    }});
                       e.push_back({"sampled mono/epi on the quasicentric linking system", "stated", true, [limits, seed] {
                                      auto L = quasicentric_linking(load_system("Sym6", limits).F);
                                      return json(verify_mono_epi(L, 200, seed).holds());
                                    }});
                       e.push_back({"A6 centric subgroups that stop being centric in Sym6", "computed", 4, [limits] {
                                      auto G = groups::symmetric(6);
                                      auto A6 = groups::alternating(6);
                                      std::vector<Elem> even;
                                      for (const auto& x : A6->elements()) even.push_back(G->index_of(x));
                                      auto N = subgroup_from_members(G, std::move(even));
                                      auto T = normal_subgroup_transfer(G, N, 2, limits);
                                      return json(T.quasicentric_lost.empty() ? T.centric_lost.size() : 0);
                                    }});
                     }
                     return e;
                   }});
  entries.push_back({"counterexample", [limits] {
                   auto sys = std::make_shared<LoadedSystem>(load_system("counterexample", limits));
                   const FusionPtr F = sys->F;
                   auto named = [sys](const char* n) { return sys->named.at(n); };
                   std::vector<Expectation> e;
                   e.push_back({"order of S", "stated", 256, [F] { return json(F->S()->order()); }});
                   for (const char* q : {"Q1", "Q2", "Q3"})
                     e.push_back({std::string("order of ") + q, "stated", 128, [named, q] { return json(named(q).order()); }});
                   for (const char* q : {"Q1", "Q2"})
                     e.push_back({std::string("Out_F(") + q + ") is S3", "stated", true, [F, named, q] {
                                    auto o = out(*F, named(q));
                                    return json(o.quotient.group->order() == 6 &&
                                                !is_abelian(Subgroup::whole(o.quotient.group)));
                                  }});
                   e.push_back({"order of Aut_F(P)", "computed", 120,
                                [F, named] { return json(aut(*F, named("P")).group->order()); }});
                   e.push_back({"H-saturated for H = {S, Q1, Q2, Q3}", "stated", true, [sys] {
                                  return json(is_H_saturated(*sys->F, parse_collection("{S,Q1,Q2,Q3}", *sys)).holds());
                                }});
                   e.push_back({"axiom I at P", "stated", false, [F, named] { return json(check_I(*F, named("P")).holds); }});
                   e.push_back({"Aut_S(P) is elementary abelian of order 4", "stated", true, [F, named] {
                                  Subgroup A = aut_S(*F, aut(*F, named("P")));
                                  return json(A.order() == 4 && exponent(A) == 2);
                                }});
                   e.push_back({"(*) witness at P", "stated", false,
                                [F, named] { return json(condition_star_witness(*F, named("P"))); }});
                   e.push_back({"theorem harness summary", "stated", "(*) fails at class of P; F not saturated", [sys] {
                                  return json(harness_summary(*sys, run_harness(*sys, parse_collection("{S,Q1,Q2,Q3}", *sys))));
                                }});
                   return e;
                 }});
  entries.push_back({"D8", [limits] {
                   auto sys = std::make_shared<LoadedSystem>(load_system("D8", limits));
                   return std::vector<Expectation>{
                       {"saturated", "immediate", true, [sys] { return json(is_saturated(*sys->F).holds()); }}};
                 }});
  entries.push_back({"trivial", [limits] {
                   auto G = load_group("trivial", limits);
                   return std::vector<Expectation>{{"group order", "immediate", 1, [G] { return json(G->order()); }}};
                 }});
  std::sort(entries.begin(), entries.end(), [](const CorpusEntry& a, const CorpusEntry& b) { return a.name < b.name; });
  return entries;
}

inline json run_entry(const CorpusEntry& entry, std::size_t& failed, std::size_t& errors) {
  json j{{"name", entry.name}};
  json exps = json::array();
  try {
    for (const auto& x : entry.build()) {
      json ej{{"name", x.name}, {"basis", x.basis}, {"expected", x.expected}};
      try {
        ej["actual"] = x.actual();
        ej["pass"] = ej["actual"] == x.expected;
        if (!ej["pass"].get<bool>()) ++failed;
      } catch (const std::exception& ex) {
        ej["error"] = ex.what();
        ej["pass"] = false;
        ++errors;
      }
      exps.push_back(std::move(ej));
    }
  } catch (const std::exception& ex) {
    j["error"] = ex.what();
    ++errors;
  }
  j["expectations"] = exps;
  return j;
}

/// Runs every entry on a small worker pool and emits them sorted by name.
inline CommandResult corpus_run(const Limits& limits, std::uint64_t seed, unsigned workers = 0) {
  const auto entries = corpus_entries(limits, seed);
  std::vector<json> results(entries.size());
  std::vector<std::size_t> failed(entries.size()), errors(entries.size());
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, unsigned(entries.size()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < entries.size();) results[i] = run_entry(entries[i], failed[i], errors[i]);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  std::size_t total = 0, nfail = 0, nerr = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    total += results[i]["expectations"].size();
    nfail += failed[i];
    nerr += errors[i];
  }
  json r;
  r["command"] = "corpus-run";
  r["entries"] = results;
  r["expectations"] = total;
  r["failed"] = nfail;
  r["errors"] = nerr;
  return {r, nerr ? 2 : nfail ? 1 : 0};
}

}  // namespace plocal::cli
