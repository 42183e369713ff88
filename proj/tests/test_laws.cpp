#include <catch_amalgamated.hpp>

#include <nhp/algebra.hpp>
#include <nhp/context.hpp>
#include <nhp/fixtures.hpp>
#include <nhp/laws.hpp>

using namespace nhp;

namespace {
  finite_algebra quasiv_quotient() {
    auto const m  = fixtures::quasiv();
    auto const mc = from_model(m, fixtures::quasiv_ops());
    return quotient(mc.algebra, resolve_partition(mc, m.partition));
  }

  check_options exhaustive() {
    check_options o;
    o.mode = check_mode::exhaustive;
    return o;
  }
}  // namespace

TEST_CASE("every suite names registered laws") {
  for (auto const& s : suites()) {
    for (auto const& n : s.laws) {
      INFO(s.name << ": " << n);
      CHECK_NOTHROW(find_law(n));
    }
  }
  CHECK_THROWS_AS(find_law("no-such-law"), input_error);
  CHECK_THROWS_AS(find_suite("no-such-suite"), input_error);
}

TEST_CASE("order premises are stored through the domain") {
  law const& l = find_law("Kleenean-2");
  REQUIRE(l.is_implication());
  auto const& p = l.premises.front();
  CHECK(p.rhs->kind == node_kind::compose);
  CHECK(p.rhs->args[0]->kind == node_kind::dom);
}

TEST_CASE("full model on 2 points satisfies every suite") {
  auto const        fm  = full_model(2);
  map_context const ctx = map_context::from_full(fm);
  for (auto const& s : suites()) {
    auto const rep = check(ctx, s, exhaustive());
    INFO(s.name);
    for (auto const& r : rep.results) {
      INFO(r.law);
      CHECK(r.passed);
      CHECK(r.mode == check_mode::exhaustive);
    }
  }
}

TEST_CASE("table algebra of the full 2-point model satisfies every suite") {
  auto const mc = from_model(
      full_concrete_model(2),
      {op::dom, op::star, op::neq, op::eite, op::wc, op::whl});
  table_context const ctx(mc.algebra);
  for (auto const& s : suites()) {
    INFO(s.name);
    CHECK(check(ctx, s, exhaustive()).passed());
  }
}

TEST_CASE("the quasiv quotient fails DT2 and nothing else") {
  auto const          Q = quasiv_quotient();
  table_context const ctx(Q);
  auto const          rep = check(ctx, "twisted-agreeable", exhaustive());
  for (auto const& r : rep.results) {
    INFO(r.law);
    CHECK(r.passed == (r.law != "DT2A"));
  }
  auto const r = check_law(ctx, find_law("DT2"), exhaustive());
  REQUIRE_FALSE(r.passed);
  std::vector<std::string> names;
  for (auto const& [v, i] : r.witness) {
    names.push_back(v + "=" + Q.name(static_cast<elem>(i)));
  }
  CHECK(names == std::vector<std::string>{"s=s", "b=beta", "t=1", "u=e"});
}

TEST_CASE("sampled runs are reproducible and independent of worker count") {
  auto const          Q = quasiv_quotient();
  table_context const ctx(Q);
  check_options       o;
  o.mode    = check_mode::sampled;
  o.samples = 20000;
  o.seed    = 7;
  std::vector<law_result> runs;
  for (unsigned w : {1U, 2U, 3U, 1U}) {
    o.workers = w;
    runs.push_back(check_law(ctx, find_law("DT2"), o));
  }
  REQUIRE_FALSE(runs[0].passed);
  for (auto const& r : runs) {
    CHECK(r.mode == check_mode::sampled);
    CHECK(r.seed == 7);
    CHECK(r.count == runs[0].count);
    CHECK(r.witness == runs[0].witness);
  }
  o.seed       = 8;
  auto const r = check_law(ctx, find_law("DT2"), o);
  CHECK(r.seed == 8);
}

TEST_CASE("automatic mode samples only above the threshold") {
  map_context const ctx = map_context::from_full(full_model(2));
  check_options     o;
  o.samples    = 100;
  auto const r = check_law(ctx, find_law("wc1"), o);
  CHECK(r.mode == check_mode::sampled);
  CHECK(r.count == 100);
  o.samples     = 1000000;
  auto const r2 = check_law(ctx, find_law("wc1"), o);
  CHECK(r2.mode == check_mode::exhaustive);
}

TEST_CASE("missing operations are capability errors") {
  auto const          mc = from_model(fixtures::quasiv(), fixtures::quasiv_ops());
  table_context const ctx(mc.algebra);
  CHECK_THROWS_AS(check(ctx, "kleenean-w"), capability_error);
  CHECK_FALSE(laws_hold(ctx, {"W12"}, exhaustive()).has_value());
}

TEST_CASE("equivalences agree on the 2-point model") {
  map_context const ctx = map_context::from_full(full_model(2));
  auto const        eq  = check_equivalences(ctx, exhaustive());
  REQUIRE(eq.size() == 3);
  for (auto const& r : eq) {
    INFO(r.name << " " << r.note);
    CHECK(r.applicable);
    CHECK(r.agrees());
    CHECK(r.lhs == std::optional<bool>(true));
  }
}

TEST_CASE("equivalence between DT2 and DT2A on the quasiv quotient") {
  auto const          Q = quasiv_quotient();
  table_context const ctx(Q);
  auto const          eq = check_equivalences(ctx, exhaustive());
  auto const& r = eq[1];
  CHECK(r.name == "DT2 <=> DT2A");
  CHECK(r.applicable);
  CHECK(r.lhs == std::optional<bool>(false));
  CHECK(r.agrees());
  CHECK_FALSE(eq[0].applicable);
}

TEST_CASE("star is the largest agreeing domain element") {
  auto const mc = from_model(fixtures::quasiv(), fixtures::quasiv_ops());
  CHECK(check_agreenor(table_context(mc.algebra)).empty());
  CHECK(check_agreenor(map_context::from_full(full_model(2))).empty());

  auto A = mc.algebra;
  // corrupt one entry: s*s should be D(s)
  A.star[mc.find("s") * A.size + mc.find("s")] = mc.find("g");
  auto const bad = check_agreenor(table_context(A));
  REQUIRE(bad.size() == 1);
  CHECK(bad[0].x == mc.find("s"));
}
