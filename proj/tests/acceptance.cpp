// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nhp/algebra.hpp>
#include <nhp/calg.hpp>
#include <nhp/context.hpp>
#include <nhp/filters.hpp>
#include <nhp/fixtures.hpp>
#include <nhp/io.hpp>
#include <nhp/laws.hpp>
#include <nhp/terms.hpp>

using namespace nhp;

namespace {

  struct outcome {
    bool        pass = true;
    std::string detail;
    std::string first_problem;

    void fail(std::string const& why) {
      if (pass) {
        first_problem = why;
      }
      pass = false;
    }
    void require(bool ok, std::string const& why) {
      if (!ok) {
        fail(why);
      }
    }
  };

  using sigma_t = std::map<std::string, std::size_t, std::less<>>;

  check_options exhaustive() {
    check_options o;
    o.mode = check_mode::exhaustive;
    return o;
  }

  check_options sampled(std::size_t n, std::uint64_t seed) {
    check_options o;
    o.mode    = check_mode::sampled;
    o.samples = n;
    o.seed    = seed;
    return o;
  }

  // Names of the laws of a report that failed.
  std::set<std::string> failing(check_report const& r) {
    std::set<std::string> out;
    for (auto const& x : r.results) {
      if (!x.passed) {
        out.insert(x.law);
      }
    }
    return out;
  }

  std::string join(std::set<std::string> const& xs) {
    std::string s;
    for (auto const& x : xs) {
      s += (s.empty() ? "" : ",") + x;
    }
    return s.empty() ? "none" : s;
  }

  ////////////////////////////////////////////////////////////////////////
  // Corpus
  ////////////////////////////////////////////////////////////////////////

  struct corpus_entry {
    std::string    name;
    finite_algebra A;
  };

  finite_algebra zero_e_one() {
    finite_algebra A;
    A.size       = 3;
    A.zero       = 0;
    A.one        = 1;
    A.mult       = {0, 0, 0, 0, 1, 2, 0, 2, 2};
    A.domain     = {0, 1, 2};
    A.tests      = {0, 1};
    A.complement = {1, 0};
    A.star       = A.mult;
    A.neq        = std::vector<elem>(9, 0);
    A.names      = {"0", "1", "e"};
    return A;
  }

  partial_map random_map(std::mt19937_64& rng, std::size_t n) {
    std::vector<point> img(n);
    for (auto& y : img) {
      std::size_t const r = rng() % (n + 1);
      y = r == n ? undefined : static_cast<point>(r);
    }
    return partial_map(img);
  }

  test_set random_test(std::mt19937_64& rng, std::size_t n) {
    std::vector<point> members;
    for (point x = 0; x < n; ++x) {
      if (rng() & 1U) {
        members.push_back(x);
      }
    }
    return test_set(n, members);
  }

  concrete_model random_model(std::mt19937_64& rng, std::size_t points,
                              std::size_t maps, std::size_t tests) {
    concrete_model m;
    m.points = points;
    for (std::size_t i = 0; i < maps; ++i) {
      m.add_map("m" + std::to_string(i), random_map(rng, points));
    }
    for (std::size_t i = 0; i < tests; ++i) {
      m.add_test("a" + std::to_string(i), random_test(rng, points));
    }
    return m;
  }

  // Closures of random generators with at most max_elems elements, under
  // operation sets that cycle through the seeds.
  std::vector<corpus_entry> random_submonoids(std::size_t want,
                                              std::size_t max_elems) {
    std::vector<op_set> const opsets = {
        {op::dom, op::star, op::neq},
        {op::dom, op::star},
        {op::dom, op::star, op::neq, op::eite},
        {op::dom, op::star, op::neq, op::whl},
        {op::dom, op::star, op::neq, op::eite, op::wc, op::whl},
    };
    std::vector<corpus_entry> out;
    for (std::uint64_t seed = 1; out.size() < want && seed < 100000; ++seed) {
      std::mt19937_64   rng(seed);
      std::size_t const points = 2 + rng() % 3;
      std::size_t const maps   = 1 + rng() % 3;
      op_set const      ops    = opsets[seed % opsets.size()];
      auto const        m      = random_model(rng, points, maps, 1);
      try {
        auto mc = from_model(m, ops, max_elems);
        if (mc.elements.size() > max_elems) {
          continue;
        }
        out.push_back({"random seed " + std::to_string(seed) + " ("
                           + std::to_string(mc.elements.size()) + " elements, {"
                           + to_string(ops) + "})",
                       std::move(mc.algebra)});
      } catch (closure_overflow const&) {
      }
    }
    return out;
  }

  std::vector<corpus_entry> const& corpus() {
    static std::vector<corpus_entry> const all = [] {
      std::vector<corpus_entry> c;
      c.push_back({"{0,e,1}", zero_e_one()});
      c.push_back({"quasiv",
                   from_model(fixtures::quasiv(), fixtures::quasiv_ops())
                       .algebra});
      c.push_back({"ten-point",
                   from_model(fixtures::disagreeable(),
                              fixtures::disagreeable_ops())
                       .algebra});
      for (std::size_t n = 0; n <= 2; ++n) {
        c.push_back({"full_model(" + std::to_string(n) + ")",
                     from_model(full_concrete_model(n),
                                {op::dom, op::star, op::neq, op::eite, op::wc,
                                 op::whl})
                         .algebra});
      }
      for (auto& e : random_submonoids(24, 40)) {
        c.push_back(std::move(e));
      }
      return c;
    }();
    return all;
  }

  std::size_t random_count() {
    std::size_t k = 0;
    for (auto const& e : corpus()) {
      k += e.name.rfind("random", 0) == 0;
    }
    return k;
  }

  finite_algebra quotient_of(concrete_model const& m, op_set ops) {
    auto const mc = from_model(m, ops);
    return quotient(mc.algebra, resolve_partition(mc, m.partition));
  }

  ////////////////////////////////////////////////////////////////////////
  // Criteria
  ////////////////////////////////////////////////////////////////////////

  outcome criterion1() {
    outcome o;
    {
      map_context const ctx = map_context::from_full(full_model(2));
      std::size_t       laws = 0;
      for (auto const& s : suites()) {
        auto const r = check(ctx, s, exhaustive());
        laws += r.results.size();
        o.require(r.passed(), "full_model(2) " + s.name + " fails "
                                  + join(failing(r)));
      }
      o.detail = "full_model(2): " + std::to_string(laws)
                 + " suite laws exhaustive";
    }
    map_context const ctx = map_context::from_full(full_model(3));
    std::size_t       exh = 0, smp = 0;
    for (auto const& s : suites()) {
      for (auto const& name : s.laws) {
        law const& l    = find_law(name);
        bool const full = l.vars.size() <= 3;
        auto const r    = check_law(ctx, l,
                                 full ? exhaustive() : sampled(1000000, 1),
                                 s.derived);
        (full ? exh : smp) += 1;
        o.require(r.passed, "full_model(3) " + s.name + "/" + name + " fails");
        o.require(full ? r.mode == check_mode::exhaustive
                       : r.count >= 1000000,
                  "full_model(3) " + name + " undersampled");
      }
    }
    o.detail += "; full_model(3): " + std::to_string(exh)
                + " exhaustive, " + std::to_string(smp)
                + " sampled at 10^6";
    return o;
  }

  // Premises and conclusion values of DT2 at (s, beta, t, u), by name.
  struct dt2_values {
    std::vector<std::pair<std::string, std::string>> premises;
    std::pair<std::string, std::string>               conclusion;
  };

  dt2_values replay_dt2(finite_algebra const& Q, sigma_t const& sigma) {
    table_context const ctx(Q);
    law const&          l = find_law("DT2");
    dt2_values          v;
    auto name = [&](elem e) { return Q.name(e); };
    for (auto const& p : l.premises) {
      v.premises.emplace_back(name(eval(p.lhs, sigma, ctx)),
                              name(eval(p.rhs, sigma, ctx)));
    }
    auto const& c = l.conclusions.front();
    v.conclusion  = {name(eval(c.lhs, sigma, ctx)), name(eval(c.rhs, sigma, ctx))};
    return v;
  }

  elem by_name(finite_algebra const& A, std::string const& n) {
    for (elem a = 0; a < A.size; ++a) {
      if (A.name(a) == n) {
        return a;
      }
    }
    return no_elem;
  }

  outcome criterion2() {
    outcome    o;
    auto const m  = fixtures::quasiv();
    auto const mc = from_model(m, fixtures::quasiv_ops());
    auto const base
        = check(table_context(mc.algebra), "twisted-agreeable", exhaustive());
    o.require(base.passed(), "fixture fails " + join(failing(base)));

    auto const p  = resolve_partition(mc, m.partition);
    auto const cg = check_congruence(mc.algebra, p);
    o.require(cg.quotient_ok(), "built-in partition is not a congruence");
    if (!cg.quotient_ok()) {
      return o;
    }
    auto const          Q = quotient(mc.algebra, p);
    table_context const qctx(Q);
    auto const rwt = check(qctx, "restriction-with-tests", exhaustive());
    auto const ta  = check(qctx, "twisted-agreeable", exhaustive());
    o.require(failing(rwt) == std::set<std::string>{"DT2"},
              "quotient restriction laws failing: " + join(failing(rwt)));
    o.require(failing(ta) == std::set<std::string>{"DT2A"},
              "quotient twisted agreeable laws failing: " + join(failing(ta)));

    // the reported witness reproduces the violation
    auto const* dt2 = rwt.find("DT2");
    sigma_t     w;
    std::string wtext;
    for (auto const& [v, i] : dt2->witness) {
      w[v] = i;
      wtext += (wtext.empty() ? "" : " ") + v + "=" + Q.name(elem(i));
    }
    auto const rv = replay_dt2(Q, w);
    o.require(rv.premises[0].first == rv.premises[0].second
                  && rv.premises[1].first == rv.premises[1].second
                  && rv.conclusion.first != rv.conclusion.second,
              "witness replay does not violate DT2");

    // the narrative instance: t = e, u = 1
    sigma_t const narrative = {{"s", by_name(Q, "s")},
                               {"b", by_name(Q, "beta")},
                               {"t", by_name(Q, "e")},
                               {"u", by_name(Q, "1")}};
    auto const nv = replay_dt2(Q, narrative);
    // D(sβ)e = D(sβ) = g;  D(sβ')e = fe θ f = D(sβ');  D(s)e = e ≠ D(s)
    o.require(nv.premises[0] == std::pair<std::string, std::string>{"g", "g"},
              "D(s;beta)e != D(s;beta)");
    o.require(nv.premises[1] == std::pair<std::string, std::string>{"f", "f"},
              "D(s;beta')e not congruent to D(s;beta')");
    o.require(nv.conclusion == std::pair<std::string, std::string>{"e", "Ds"},
              "D(s)e vs D(s) not as narrated");
    o.detail = std::to_string(mc.elements.size()) + " elements, quotient "
               + std::to_string(Q.size) + "; DT2 witness " + wtext
               + "; narrative D(s;beta)e=g=D(s;beta), D(s;beta')e="
               + nv.premises[1].first + "=D(s;beta'), D(s)e=e!=Ds";
    return o;
  }

  outcome criterion3() {
    outcome    o;
    auto const m  = fixtures::disagreeable();
    auto const mc = from_model(m, fixtures::disagreeable_ops());
    auto const base
        = check(table_context(mc.algebra), "disagreeable", exhaustive());
    o.require(base.passed(), "fixture fails " + join(failing(base)));
    auto const p  = resolve_partition(mc, m.partition);
    auto const cg = check_congruence(mc.algebra, p);
    o.require(cg.quotient_ok(), "built-in partition is not a congruence");
    if (!cg.quotient_ok()) {
      return o;
    }
    auto const Q = quotient(mc.algebra, p);
    auto const r = check(table_context(Q), "disagreeable", exhaustive());
    o.require(failing(r) == std::set<std::string>{"inimp"},
              "quotient failing: " + join(failing(r)));
    std::string wtext;
    if (auto const* x = r.find("inimp"); x != nullptr && !x->passed) {
      for (auto const& [v, i] : x->witness) {
        wtext += (wtext.empty() ? "" : " ") + v + "=" + Q.name(elem(i));
      }
    }
    o.require(wtext == "s=s t=t e=e", "inimp witness is " + wtext);
    o.detail = std::to_string(mc.elements.size()) + " elements, quotient "
               + std::to_string(Q.size) + "; inimp witness " + wtext;
    return o;
  }

  outcome criterion4() {
    outcome     o;
    std::size_t n = 0;
    for (auto const& e : corpus()) {
      auto const rep = build_representation(e.A);
      auto const r   = verify_representation(e.A, rep);
      o.require(r.ok(), e.name + " representation fails");
      ++n;
    }
    o.require(random_count() >= 20, "fewer than 20 random submonoids");
    auto const Q  = quotient_of(fixtures::quasiv(), fixtures::quasiv_ops());
    auto const rq = verify_representation(Q, build_representation(Q));
    o.require(rq.has("complement-coverage"),
              "quasiv quotient shows no complement-coverage failure");
    o.detail = std::to_string(n) + " algebras faithful ("
               + std::to_string(random_count())
               + " random); quasiv quotient complement-coverage failures: "
               + std::to_string(rq.has("complement-coverage")
                                    ? rq.counts.at("complement-coverage")
                                    : 0);
    return o;
  }

  outcome criterion5() {
    outcome     o;
    std::size_t cases = 0, algebras = 0;
    for (auto const& e : corpus()) {
      auto const pf = check_principal_filters(e.A);
      o.require(pf.ok(), e.name + " principal filter lemma fails");
      cases += pf.cases;
      if (e.A.star.empty()) {
        continue;
      }
      ++algebras;
      auto const ls = check_lemma_star(e.A);
      auto const lm = check_lemma_maxagree(e.A);
      auto const ag = check_agreenor(table_context(e.A));
      o.require(ls.ok(), e.name + " lemma star fails");
      o.require(lm.ok(), e.name + " lemma maxagree fails");
      o.require(ag.empty(), e.name + " agreenor fails");
      cases += ls.cases + lm.cases + e.A.size * e.A.size;
    }
    o.detail = std::to_string(algebras) + " algebras with star, "
               + std::to_string(cases) + " cases, zero violations";
    return o;
  }

  outcome criterion6() {
    outcome                             o;
    std::map<std::string, std::size_t>  applicable;
    std::vector<corpus_entry>           all = corpus();
    all.push_back({"quasiv quotient",
                   quotient_of(fixtures::quasiv(), fixtures::quasiv_ops())});
    all.push_back({"ten-point quotient",
                   quotient_of(fixtures::disagreeable(),
                               fixtures::disagreeable_ops())});
    for (auto const& e : all) {
      for (auto const& r : check_equivalences(table_context(e.A), exhaustive())) {
        if (r.applicable) {
          ++applicable[r.name];
        }
        o.require(r.agrees(), e.name + ": " + r.name + " disagrees");
      }
    }
    std::string counts;
    for (auto const& [name, k] : applicable) {
      counts += (counts.empty() ? "" : "; ") + name + " on "
                + std::to_string(k);
    }
    o.require(applicable.size() == 3, "some equivalence was never applicable");
    o.detail = counts + " algebras, zero disagreements";
    return o;
  }

  // Carrier: 0, 1, the generators and the Boolean closure of the tests.
  map_context random_carrier(std::uint64_t seed) {
    std::mt19937_64     rng(seed);
    std::size_t const   n = 4;
    std::vector<partial_map> carrier = {partial_map::null(n),
                                        partial_map::identity(n)};
    std::vector<std::size_t> tests   = {0, 1};
    auto add = [&](partial_map f) {
      auto it = std::find(carrier.begin(), carrier.end(), f);
      if (it != carrier.end()) {
        return std::size_t(it - carrier.begin());
      }
      carrier.push_back(std::move(f));
      return carrier.size() - 1;
    };
    for (int i = 0; i < 4; ++i) {
      add(random_map(rng, n));
    }
    auto add_test = [&](test_set const& t) {
      std::size_t const i = add(t.as_map());
      if (std::find(tests.begin(), tests.end(), i) == tests.end()) {
        tests.push_back(i);
      }
    };
    add_test(random_test(rng, n));
    add_test(random_test(rng, n));
    for (std::size_t i = 0; i < tests.size(); ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        auto const a = test_set::from_map(carrier[tests[i]]);
        auto const b = test_set::from_map(carrier[tests[j]]);
        add_test(test_set::from_map(compose(a.as_map(), b.as_map())));
        add_test(test_complement(a));
      }
    }
    return map_context(n, carrier, tests);
  }

  outcome criterion7() {
    outcome                      o;
    std::vector<std::string> const laws = {"W12", "Kleenean-1", "Kleenean-2"};
    std::size_t                  triples = 0, models = 0;
    auto run = [&](map_context const& ctx, map_context const& space,
                   std::string const& name) {
      ++models;
      for (auto const& l : laws) {
        o.require(check_law(ctx, find_law(l), exhaustive()).passed,
                  name + " fails " + l);
      }
      for (std::size_t t = 0; t < ctx.size(); ++t) {
        for (std::size_t a : ctx.tests()) {
          for (std::size_t s = 0; s < ctx.size(); ++s) {
            ++triples;
            auto const& T = ctx.value(t);
            auto const& A = ctx.value(a);
            auto const& S = ctx.value(s);
            auto const  u = while_unroll(ctx, T, A, S);
            o.require(u.matches && u.powers_ok,
                      name + " unrolling differs from while-do");
            o.require(minb_check(space, T, A, S).ok,
                      name + " while-do is not the least solution");
          }
        }
      }
    };
    map_context const full2 = map_context::from_full(full_model(2));
    run(full2, full2, "full_model(2)");
    map_context const full4 = map_context::from_full(full_model(4));
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      run(random_carrier(seed), full4,
          "random 4-point model " + std::to_string(seed));
    }
    o.detail = std::to_string(models) + " models, " + std::to_string(triples)
               + " triples; W12, Kleenean pair, minb, unrolling all hold";
    return o;
  }

  outcome criterion8() {
    outcome     o;
    std::size_t models = 0, preds = 0, conj_fu = 0, disj_ut = 0;
    auto run = [&](map_context const& ctx, std::string const& name) {
      auto const B = generate_bstar(ctx);
      auto const L = check_bstar_laws(B);
      auto const R = three_valued_check(ctx, B);
      o.require(L.involution, name + ": negation is not an involution");
      o.require(L.embeds, name + ": tests do not embed");
      o.require(R.ok(), name + ": traces disagree with the bullets");
      ++models;
      preds += B.preds.size();
      conj_fu += R.conj_false_undef;
      disj_ut += R.disj_undef_true;
    };
    for (std::size_t n = 0; n <= 3; ++n) {
      run(map_context::from_full(full_model(n)),
          "full_model(" + std::to_string(n) + ")");
    }
    std::size_t random = 0;
    for (std::uint64_t seed = 1; random < 12 && seed < 10000; ++seed) {
      std::mt19937_64   rng(seed * 7919);
      std::size_t const points = 1 + rng() % 3;
      auto const        m      = random_model(rng, points, 1 + rng() % 2, 1);
      try {
        auto const mc = from_model(m, {op::eite, op::wc}, 30);
        run(map_context::from_closure(mc),
            "random closure " + std::to_string(seed));
        ++random;
      } catch (closure_overflow const&) {
      }
    }
    o.require(random >= 10, "too few random models");
    o.require(conj_fu > 0 && disj_ut > 0, "asymmetric cases never arose");
    o.detail = std::to_string(models) + " models (" + std::to_string(random)
               + " random), " + std::to_string(preds)
               + " predicates; asymmetric states seen: and " + std::to_string(conj_fu)
               + ", or " + std::to_string(disj_ut);
    return o;
  }

  outcome criterion9() {
    outcome o;
    auto const Q = quotient_of(fixtures::quasiv(), fixtures::quasiv_ops());
    table_context const qctx(Q);
    map_context const   f3 = map_context::from_full(full_model(3));
    std::size_t         runs = 0;
    auto report = [&](auto const& ctx, suite const& s, std::uint64_t seed,
                      unsigned workers) {
      check_options opt = sampled(100000, seed);
      opt.workers       = workers;
      ++runs;
      return io::to_json(check(ctx, s, opt)).dump();
    };
    for (std::uint64_t seed : {3ULL, 0x5eedULL}) {
      for (char const* sname : {"restriction-with-tests", "twisted-agreeable"}) {
        suite const&      s   = find_suite(sname);
        std::string const ref = report(qctx, s, seed, 1);
        if (std::string_view(sname) == "restriction-with-tests") {
          o.require(ref.find("\"fail\"") != std::string::npos,
                    "sampled quotient run found no failure");
        }
        for (unsigned w : {1U, 2U, 4U}) {
          o.require(report(qctx, s, seed, w) == ref,
                    std::string(sname) + " report varies with workers");
        }
      }
      suite const&      k   = find_suite("kleenean-w");
      std::string const ref = report(f3, k, seed, 1);
      for (unsigned w : {2U, 3U}) {
        o.require(report(f3, k, seed, w) == ref,
                  "kleenean-w report varies with workers");
      }
    }
    o.detail = std::to_string(runs) + " sampled runs byte-identical per seed";
    return o;
  }

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<outcome()>>> const criteria
      = {{"soundness of the full models", criterion1},
         {"quasiv example", criterion2},
         {"ten-point example", criterion3},
         {"representation faithfulness", criterion4},
         {"lemma-level oracles", criterion5},
         {"equivalence propositions", criterion6},
         {"while-do", criterion7},
         {"predicate semantics", criterion8},
         {"determinism", criterion9}};
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto const t0 = std::chrono::steady_clock::now();
    outcome    o;
    try {
      o = criteria[i].second();
    } catch (std::exception const& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double const secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
    char time[32];
    std::snprintf(time, sizeof time, "%.1fs", secs);
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << " ("
              << criteria[i].first << ", " << time << "): "
              << (o.pass ? o.detail : o.first_problem) << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
