#pragma once

// The two counterexample systems of partial maps, with their partitions.

#include <string>
#include <vector>

#include "algebra.hpp"
#include "model.hpp"
#include "pfun.hpp"

namespace nhp::fixtures {

  namespace detail {
    inline constexpr point U = undefined;

    inline partial_map shift_on(std::size_t                points,
                                std::vector<point> const&  dom,
                                point                      by) {
      std::vector<point> img(points, U);
      for (point x : dom) {
        img[x] = x + by;
      }
      return partial_map(img);
    }

    inline partial_map id_on(std::size_t points, std::vector<point> const& dom) {
      return test_set(points, dom).as_map();
    }
  }  // namespace detail

  // Eight points. s: {0,1,2,3} -> x+4; beta = {0..5}; e = id on {0,1,2};
  // g = D(s;beta), f = D(s;beta'); the partition identifies ef with f and
  // efs with fs (= s;beta').
  inline concrete_model quasiv() {
    using namespace detail;
    concrete_model m;
    m.points = 8;
    m.add_map("s", shift_on(8, {0, 1, 2, 3}, 4));
    m.add_map("Ds", id_on(8, {0, 1, 2, 3}));
    m.add_map("s_beta", shift_on(8, {0, 1}, 4));
    m.add_map("s_beta'", shift_on(8, {2, 3}, 4));
    m.add_map("e", id_on(8, {0, 1, 2}));
    m.add_map("g", id_on(8, {0, 1}));
    m.add_map("f", id_on(8, {2, 3}));
    m.add_map("ef", id_on(8, {2}));
    m.add_map("efs", shift_on(8, {2}, 4));
    m.add_test("beta", test_set(8, {0, 1, 2, 3, 4, 5}));
    m.add_test("beta'", test_set(8, {6, 7}));
    m.partition = {{"ef", "f"}, {"efs", "s_beta'"}};
    return m;
  }

  // Ten points. s: {0..4} -> x+5; t: 0->5, 1->7, 2->6, 3->9, 4->8; f = s*t,
  // g = (s != t), e = id on {0,1,2}. Only the trivial tests. The partition
  // identifies g with eg, gs with egs and gt with egt.
  inline concrete_model disagreeable() {
    using namespace detail;
    concrete_model m;
    m.points = 10;
    partial_map const s = shift_on(10, {0, 1, 2, 3, 4}, 5);
    partial_map const t({5, 7, 6, 9, 8, U, U, U, U, U});
    partial_map const f = id_on(10, {0});
    partial_map const g = id_on(10, {1, 2, 3, 4});
    partial_map const e = id_on(10, {0, 1, 2});
    partial_map const eg = id_on(10, {1, 2});
    m.add_map("s", s);
    m.add_map("t", t);
    m.add_map("s_and_t", intersect(s, t));
    m.add_map("Ds", id_on(10, {0, 1, 2, 3, 4}));
    m.add_map("f", f);
    m.add_map("g", g);
    m.add_map("e", e);
    m.add_map("eg", eg);
    m.add_map("es", compose(e, s));
    m.add_map("et", compose(e, t));
    m.add_map("fs", compose(f, s));
    m.add_map("gs", compose(g, s));
    m.add_map("gt", compose(g, t));
    m.add_map("egs", compose(eg, s));
    m.add_map("egt", compose(eg, t));
    m.partition = {{"g", "eg"}, {"gs", "egs"}, {"gt", "egt"}};
    return m;
  }

  // Operations each fixture is closed under, as asserted for it.
  inline op_set quasiv_ops() {
    return {op::dom, op::star};
  }
  inline op_set disagreeable_ops() {
    return {op::dom, op::star, op::neq};
  }

}  // namespace nhp::fixtures
