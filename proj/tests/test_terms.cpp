#include <catch_amalgamated.hpp>

#include <map>

#include <nhp/algebra.hpp>
#include <nhp/context.hpp>
#include <nhp/fixtures.hpp>
#include <nhp/terms.hpp>

using namespace nhp;

namespace {
  using assignment = std::map<std::string, partial_map, std::less<>>;

  // Direct recursive semantics, independent of the compiled program.
  partial_map denote(term const& t, assignment const& env, std::size_t n) {
    auto arg = [&](std::size_t i) { return denote(t->args[i], env, n); };
    auto as_test
        = [&](std::size_t i) { return test_set::from_map(arg(i)); };
    switch (t->kind) {
      case node_kind::zero:
        return partial_map::null(n);
      case node_kind::one:
        return partial_map::identity(n);
      case node_kind::var:
        return env.at(t->name);
      case node_kind::compose:
        return compose(arg(0), arg(1));
      case node_kind::dom:
        return domain_of(arg(0)).as_map();
      case node_kind::star:
        return agree_star(arg(0), arg(1)).as_map();
      case node_kind::neq:
        return disagree(arg(0), arg(1)).as_map();
      case node_kind::eite:
        return ext_ite(arg(0), as_test(1), arg(2), arg(3));
      case node_kind::wc:
        return weak_cmp(arg(0), arg(1), arg(2), arg(3));
      case node_kind::whl:
        return ext_while(arg(0), as_test(1), arg(2));
      case node_kind::complement:
        return test_complement(as_test(0)).as_map();
      case node_kind::antidom:
        return antidomain_P(arg(0)).as_map();
      case node_kind::bowtie:
        return bowtie(arg(0), arg(1)).as_map();
      case node_kind::cup:
        return pref_union(arg(0), arg(1));
    }
    return partial_map::null(n);
  }

  sort_env const test_a = {{"a", sort::test}};
}  // namespace

TEST_CASE("parsing and printing round-trip") {
  for (char const* s : {"0", "1", "s", "s;t;u", "s;(t;u)", "D(s;t)",
                        "star(s,t)", "neq(s,D(t))", "bowtie(s,t)", "cup(s,t)",
                        "P(s)", "wc(s,t,u,v)", "x_1'"}) {
    CHECK(print(parse(s)) == s);
  }
  CHECK(print(parse("ite(s, a, t, u)", test_a)) == "ite(s,a,t,u)");
  CHECK(print(parse("while(t,not(a);a,s)", test_a)) == "while(t,not(a);a,s)");
  CHECK(print(parse(" ( s ; t ) ; u ")) == "s;t;u");
}

TEST_CASE("composition associates to the left") {
  auto const t = parse("s;t;u");
  REQUIRE(t->kind == node_kind::compose);
  CHECK(t->args[0]->kind == node_kind::compose);
  CHECK(t->args[1]->name == "u");
}

TEST_CASE("parse errors carry positions") {
  try {
    parse("s )");
    FAIL("expected parse_error");
  } catch (parse_error const& e) {
    CHECK(e.position() == 2);
  }
  CHECK_THROWS_AS(parse("D(s"), parse_error);
  CHECK_THROWS_AS(parse("foo(s)"), parse_error);
  CHECK_THROWS_AS(parse("1a"), parse_error);
  CHECK_THROWS_AS(parse(""), parse_error);
  CHECK_THROWS_AS(parse("star(s)"), parse_error);
  CHECK_THROWS_AS(parse("s;"), parse_error);
  CHECK_THROWS_AS(parse("#"), parse_error);
}

TEST_CASE("test-sorted positions are checked") {
  try {
    parse("ite(s,t,u,v)");
    FAIL("expected sort_error");
  } catch (sort_error const& e) {
    CHECK(e.subterm() == "t");
  }
  CHECK_THROWS_AS(parse("while(s,D(s),t)"), sort_error);
  CHECK_THROWS_AS(parse("not(s)"), sort_error);
  CHECK_NOTHROW(parse("ite(s,a;not(a),t,u)", test_a));
  CHECK_NOTHROW(parse("ite(s,0,t,u)"));
  CHECK_NOTHROW(parse("while(t,1,s)"));
}

TEST_CASE("operations used by a term") {
  auto const ops = ops_used(parse("D(s);wc(s,t,star(s,t),u)"));
  CHECK(ops.contains(op::dom));
  CHECK(ops.contains(op::wc));
  CHECK(ops.contains(op::star));
  CHECK_FALSE(ops.contains(op::neq));
  CHECK(ops_used(parse("s;t")).empty());
}

TEST_CASE("expansion leaves basic terms alone and fails without a route") {
  auto const t = parse("D(s);t");
  CHECK(expand_derived(t, {op::dom}) == t);
  CHECK_THROWS_AS(expand_derived(parse("D(s)"), {}), capability_error);
  CHECK_THROWS_AS(expand_derived(parse("while(t,1,s)"), {op::eite, op::dom}),
                  capability_error);
  CHECK_THROWS_AS(expand_derived(parse("star(s,t)"), {op::dom}),
                  capability_error);
}

TEST_CASE("derived operations agree with direct semantics on 2 points") {
  auto const         fm = full_model(2);
  std::size_t const  n  = fm.points;
  std::vector<std::pair<char const*, op_set>> const cases = {
      {"D(x)", {op::eite}},
      {"D(x)", {op::wc}},
      {"D(x)", {op::star}},
      {"star(x,y)", {op::wc}},
      {"star(x,y)", {op::bowtie, op::dom}},
      {"neq(x,y)", {op::wc}},
      {"neq(x,y)", {op::bowtie, op::dom}},
      {"neq(x,y)", {op::bowtie, op::eite}},
      {"P(x)", {op::dom}},
      {"P(x)", {op::wc}},
      {"cup(x,y)", {op::eite}},
      {"ite(x,a,y,z)", {op::cup, op::dom}},
      {"wc(x,y,z,w)", {op::cup, op::star, op::neq}},
      {"wc(x,y,z,w)", {op::cup, op::bowtie, op::dom}},
  };
  for (auto const& [text, basis] : cases) {
    auto const t = parse(text, test_a);
    auto const e = expand_derived(t, basis);
    INFO(text << " over {" << to_string(basis) << "} -> " << print(e));
    REQUIRE(ops_used(e).subset_of(basis));

    map_context ctx = map_context::from_full(fm);
    ctx.restrict_ops(basis);
    std::vector<std::pair<std::string, sort>> vars;
    collect_vars(t, vars);
    std::vector<std::size_t> pos(vars.size(), 0);
    auto const& tests = ctx.tests();
    while (true) {
      std::map<std::string, std::size_t, std::less<>> sigma;
      assignment                                      env;
      bool                                            valid = true;
      for (std::size_t k = 0; k < vars.size(); ++k) {
        std::size_t const bound = vars[k].second == sort::test ? tests.size()
                                                               : ctx.size();
        valid = valid && pos[k] < bound;
        if (!valid) {
          break;
        }
        std::size_t const p
            = vars[k].second == sort::test ? tests[pos[k]] : pos[k];
        sigma[vars[k].first] = p;
        env[vars[k].first]   = ctx.value(p);
      }
      if (valid) {
        REQUIRE(eval(t, sigma, ctx) == denote(t, env, n));
      }
      std::size_t k = 0;
      while (k < vars.size() && ++pos[k] >= ctx.size()) {
        pos[k++] = 0;
      }
      if (k == vars.size()) {
        break;
      }
    }
  }
}

TEST_CASE("evaluation over a table algebra") {
  auto const    mc  = from_model(fixtures::quasiv(), fixtures::quasiv_ops());
  table_context ctx(mc.algebra);
  std::map<std::string, std::size_t, std::less<>> sigma
      = {{"s", mc.find("s")}, {"b", mc.find("beta")}, {"e", mc.find("e")}};
  CHECK(eval(parse("D(s;b)"), sigma, ctx) == mc.find("g"));
  CHECK(eval(parse("D(s;not(b))", {{"b", sort::test}}), sigma, ctx)
        == mc.find("f"));
  CHECK(eval(parse("star(s,e;s)"), sigma, ctx) == mc.find("e"));
  CHECK_THROWS_AS(eval(parse("s;t"), sigma, ctx), input_error);
  CHECK_THROWS_AS(eval(parse("wc(s,s,s,s)"), sigma, ctx), capability_error);
  sigma["s"] = 99;
  CHECK_THROWS_AS(eval(parse("s"), sigma, ctx), input_error);
}
