#pragma once

// Filters of D(S), determinative pairs and the functional representation
// θ = ⋃θ_F, plus the while-do unrolling and least-solution checks.
//
// D(S) is finite, so every filter is principal: F = ↑g = {f ∈ D(S) : g·f = g}.
// Filters are therefore stored by generator.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "context.hpp"
#include "error.hpp"
#include "pfun.hpp"
#include "terms.hpp"

namespace nhp {

  struct filter {
    elem generator = 0;

    friend bool operator==(filter, filter) = default;
  };

  namespace detail {
    inline void require_domain(finite_algebra const& A) {
      if (!A.has_domain()) {
        throw capability_error("filters need the domain table");
      }
    }
    inline bool in_filter(finite_algebra const& A, elem g, elem f) {
      return A.mul(g, f) == g;
    }
  }  // namespace detail

  inline std::vector<elem> filter_members(finite_algebra const& A, filter F) {
    std::vector<elem> out;
    for (elem f : domain_elements(A)) {
      if (detail::in_filter(A, F.generator, f)) {
        out.push_back(f);
      }
    }
    return out;
  }

  inline bool is_proper(finite_algebra const& A, filter F) {
    return F.generator != A.zero;
  }

  // One filter per nonzero domain element, in element order.
  inline std::vector<filter> all_filters(finite_algebra const& A) {
    std::vector<filter> out;
    for (elem g : domain_elements(A)) {
      if (g != A.zero) {
        out.push_back({g});
      }
    }
    return out;
  }

  // F_h = {f : f >= g'h for some g' in F}, generated by g·h.
  inline filter extend_filter(finite_algebra const& A, filter F, elem h) {
    detail::require_domain(A);
    if (A.dom(h) != h) {
      throw input_error("extend_filter: " + A.name(h)
                        + " is not a domain element");
    }
    if (detail::in_filter(A, F.generator, h)) {
      throw input_error("extend_filter: " + A.name(h)
                        + " already lies in the filter");
    }
    return {A.mul(F.generator, h)};
  }

  inline bool is_separating(finite_algebra const& A, filter F, elem a, elem b) {
    elem const g = F.generator;
    return detail::in_filter(A, g, A.dom(a)) && A.mul(g, a) != A.mul(g, b);
  }

  inline bool leq(finite_algebra const& A, elem a, elem b) {
    return A.mul(A.dom(a), b) == a;
  }

  inline std::vector<filter> separating_filters(finite_algebra const& A,
                                                elem                  a,
                                                elem                  b) {
    detail::require_domain(A);
    if (leq(A, a, b)) {
      throw input_error("separating filters need a not <= b");
    }
    std::vector<filter> out;
    for (filter F : all_filters(A)) {
      if (is_separating(A, F, a, b)) {
        out.push_back(F);
      }
    }
    return out;
  }

  namespace detail {
    // Filters maximal under inclusion: ↑h ⊋ ↑g iff h < g.
    inline std::vector<filter> maximal_among(finite_algebra const&      A,
                                             std::vector<filter> const& fs) {
      std::vector<filter> out;
      for (filter F : fs) {
        bool maximal = true;
        for (filter G : fs) {
          if (G.generator != F.generator
              && in_filter(A, G.generator, F.generator)) {
            maximal = false;
            break;
          }
        }
        if (maximal) {
          out.push_back(F);
        }
      }
      return out;
    }
  }  // namespace detail

  inline std::vector<filter> maximal_separating(finite_algebra const& A,
                                                elem                  a,
                                                elem                  b) {
    return detail::maximal_among(A, separating_filters(A, a, b));
  }

  struct determinative_pair {
    filter                         F;
    std::vector<bool>              in_w;      // D(a) ∉ F
    std::vector<std::vector<elem>> classes;   // ε_F classes of S∖W, by least member
    std::vector<std::size_t>       class_of;  // npos for members of W
  };

  inline determinative_pair determinative(finite_algebra const& A, filter F) {
    detail::require_domain(A);
    if (!is_proper(A, F)) {
      throw input_error("determinative pair needs a proper filter");
    }
    determinative_pair          dp;
    elem const                  g = F.generator;
    std::map<elem, std::size_t> by_key;  // g·x -> class
    dp.F = F;
    dp.in_w.resize(A.size);
    dp.class_of.assign(A.size, npos);
    for (elem x = 0; x < A.size; ++x) {
      dp.in_w[x] = A.mul(g, A.dom(x)) != g;
      if (dp.in_w[x]) {
        continue;
      }
      auto [it, fresh] = by_key.try_emplace(A.mul(g, x), dp.classes.size());
      if (fresh) {
        dp.classes.emplace_back();
      }
      dp.classes[it->second].push_back(x);
      dp.class_of[x] = it->second;
    }
    return dp;
  }

  // ψ^F_s: class(x) -> class(x·s) when x·s ∉ W. Throws invariant_error if
  // members of one class disagree.
  inline partial_map psi(finite_algebra const&     A,
                         determinative_pair const& dp,
                         elem                      s) {
    std::vector<point> img(dp.classes.size(), undefined);
    for (std::size_t c = 0; c < dp.classes.size(); ++c) {
      auto image_of = [&](elem x) -> point {
        elem const xs = A.mul(x, s);
        return dp.in_w[xs] ? undefined : static_cast<point>(dp.class_of[xs]);
      };
      point const first = image_of(dp.classes[c].front());
      for (elem x : dp.classes[c]) {
        if (image_of(x) != first) {
          throw invariant_error("psi is not well defined on class of "
                                + A.name(dp.classes[c].front()));
        }
      }
      img[c] = first;
    }
    return partial_map(partial_map::unchecked{}, std::move(img));
  }

  struct component {
    filter                F;
    std::pair<elem, elem> pair;  // first (a, b) for which F is maximal
    determinative_pair    dp;
    std::size_t           offset = 0;
  };

  struct representation {
    std::vector<component>   components;  // sorted by filter generator
    std::size_t              points = 0;
    std::vector<partial_map> theta;  // per element, on the concatenated space
  };

  inline representation build_representation(finite_algebra const& A) {
    detail::require_domain(A);
    representation            rep;
    std::map<elem, std::pair<elem, elem>> found;
    for (elem a = 0; a < A.size; ++a) {
      for (elem b = 0; b < A.size; ++b) {
        if (leq(A, a, b)) {
          continue;
        }
        for (filter F : maximal_separating(A, a, b)) {
          found.try_emplace(F.generator, a, b);
        }
      }
    }
    for (auto const& [g, ab] : found) {
      component c{{g}, ab, determinative(A, {g}), rep.points};
      rep.points += c.dp.classes.size();
      rep.components.push_back(std::move(c));
    }
    for (elem s = 0; s < A.size; ++s) {
      std::vector<point> img;
      img.reserve(rep.points);
      for (auto const& c : rep.components) {
        partial_map const p = psi(A, c.dp, s);
        for (point y : p.image()) {
          img.push_back(y == undefined ? undefined
                                       : static_cast<point>(y + c.offset));
        }
      }
      rep.theta.emplace_back(partial_map::unchecked{}, std::move(img));
    }
    return rep;
  }

  struct rep_failure {
    std::string       check;
    std::vector<elem> at;
  };

  struct rep_report {
    std::vector<rep_failure>             failures;  // first few per check
    std::map<std::string, std::size_t>   counts;    // all failures per check
    std::vector<std::string>             checked;   // checks that ran

    bool ok() const noexcept {
      return counts.empty();
    }
    bool has(std::string const& check) const {
      return counts.count(check) != 0;
    }
  };

  // Compares θ of each operation result with the concrete operation on the
  // images, over all tuples.
  inline rep_report verify_representation(finite_algebra const& A,
                                          representation const& rep,
                                          std::size_t           keep = 16) {
    rep_report  R;
    auto const& th   = rep.theta;
    auto        fail = [&](std::string const& check, std::vector<elem> at) {
      if (R.counts[check]++ < keep) {
        R.failures.push_back({check, std::move(at)});
      }
    };
    std::size_t const m = A.size;
    auto              P = [&](std::string c) {
      R.checked.push_back(std::move(c));
    };

    P("injective");
    {
      std::map<partial_map, elem> seen;
      for (elem a = 0; a < m; ++a) {
        auto [it, fresh] = seen.try_emplace(th[a], a);
        if (!fresh) {
          fail("injective", {it->second, a});
        }
      }
    }
    P("one");
    if (th[A.one] != partial_map::identity(rep.points)) {
      fail("one", {A.one});
    }
    P("zero");
    if (th[A.zero] != partial_map::null(rep.points)) {
      fail("zero", {A.zero});
    }
    P("mult");
    for (elem a = 0; a < m; ++a) {
      for (elem b = 0; b < m; ++b) {
        if (th[A.mul(a, b)] != compose(th[a], th[b])) {
          fail("mult", {a, b});
        }
      }
    }
    P("D");
    for (elem a = 0; a < m; ++a) {
      if (th[A.dom(a)] != domain_of(th[a]).as_map()) {
        fail("D", {a});
      }
    }
    P("tests");
    P("complement-coverage");
    P("complement");
    for (std::size_t i = 0; i < A.tests.size(); ++i) {
      elem const a = A.tests[i], ac = A.complement[i];
      if (!th[a].is_restricted_identity() || !th[ac].is_restricted_identity()) {
        fail("tests", {a});
        continue;
      }
      bool covered = true;
      for (point x = 0; x < rep.points; ++x) {
        covered = covered && (th[a].defined(x) || th[ac].defined(x));
      }
      if (!covered) {
        fail("complement-coverage", {a});
      } else if (th[ac]
                 != test_complement(test_set::from_map(th[a])).as_map()) {
        fail("complement", {a});
      }
    }
    if (!A.star.empty()) {
      P("star");
      for (elem a = 0; a < m; ++a) {
        for (elem b = 0; b < m; ++b) {
          if (th[A.star_at(a, b)] != agree_star(th[a], th[b]).as_map()) {
            fail("star", {a, b});
          }
        }
      }
    }
    if (!A.neq.empty()) {
      P("neq");
      for (elem a = 0; a < m; ++a) {
        for (elem b = 0; b < m; ++b) {
          if (th[A.neq_at(a, b)] != disagree(th[a], th[b]).as_map()) {
            fail("neq", {a, b});
          }
        }
      }
    }
    if (!A.eite.empty()) {
      P("eite");
      for (elem s = 0; s < m; ++s) {
        for (std::size_t ai = 0; ai < A.tests.size(); ++ai) {
          elem const a = A.tests[ai];
          for (elem t = 0; t < m; ++t) {
            for (elem u = 0; u < m; ++u) {
              if (th[A.eite_at(s, ai, t, u)]
                  != detail::ext_ite(th[s], th[a], th[t], th[u])) {
                fail("eite", {s, a, t, u});
              }
            }
          }
        }
      }
    }
    if (!A.wc.empty()) {
      P("wc");
      for (elem s = 0; s < m; ++s) {
        for (elem t = 0; t < m; ++t) {
          for (elem u = 0; u < m; ++u) {
            for (elem v = 0; v < m; ++v) {
              if (th[A.wc_at(s, t, u, v)]
                  != weak_cmp(th[s], th[t], th[u], th[v])) {
                fail("wc", {s, t, u, v});
              }
            }
          }
        }
      }
    }
    if (!A.whl.empty()) {
      P("while");
      for (elem t = 0; t < m; ++t) {
        for (std::size_t ai = 0; ai < A.tests.size(); ++ai) {
          elem const a = A.tests[ai];
          for (elem s = 0; s < m; ++s) {
            if (th[A.whl_at(t, ai, s)]
                != detail::ext_while(th[t], th[a], th[s])) {
              fail("while", {t, a, s});
            }
          }
        }
      }
    }
    return R;
  }

  ////////////////////////////////////////////////////////////////////////
  // Lemma-level checks
  ////////////////////////////////////////////////////////////////////////

  struct lemma_report {
    std::size_t                    cases = 0;
    std::vector<std::vector<elem>> violations;

    bool ok() const noexcept {
      return violations.empty();
    }
  };

  // Every ↑g (g nonzero) is up- and meet-closed, and every up- and
  // meet-closed set of domain elements without 0 equals ↑(its meet). The
  // converse direction enumerates subsets, so needs |D(S)| <= max_exhaustive.
  inline lemma_report check_principal_filters(finite_algebra const& A,
                                              std::size_t max_exhaustive = 12) {
    lemma_report      R;
    auto const        ds = domain_elements(A);
    auto              le = [&](elem e, elem f) { return A.mul(e, f) == e; };
    std::size_t const k  = ds.size();
    auto closed = [&](std::vector<bool> const& in) {
      for (std::size_t i = 0; i < k; ++i) {
        if (!in[i]) {
          continue;
        }
        for (std::size_t j = 0; j < k; ++j) {
          if (le(ds[i], ds[j]) && !in[j]) {
            return false;
          }
          if (in[j]) {
            auto it = std::find(ds.begin(), ds.end(), A.mul(ds[i], ds[j]));
            if (it == ds.end() || !in[it - ds.begin()]) {
              return false;
            }
          }
        }
      }
      return true;
    };
    for (elem g : ds) {
      if (g == A.zero) {
        continue;
      }
      ++R.cases;
      std::vector<bool> in(k);
      for (std::size_t i = 0; i < k; ++i) {
        in[i] = le(g, ds[i]);
      }
      if (!closed(in)) {
        R.violations.push_back({g});
      }
    }
    if (k > max_exhaustive) {
      return R;
    }
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
      std::vector<bool> in(k);
      elem              meet = A.one;
      bool              has_zero = false;
      for (std::size_t i = 0; i < k; ++i) {
        in[i] = (mask >> i) & 1U;
        if (in[i]) {
          meet     = A.mul(meet, ds[i]);
          has_zero = has_zero || ds[i] == A.zero;
        }
      }
      if (has_zero || !closed(in)) {
        continue;
      }
      ++R.cases;
      for (std::size_t i = 0; i < k; ++i) {
        if (in[i] != le(meet, ds[i])) {
          R.violations.push_back({meet});
          break;
        }
      }
    }
    return R;
  }

  // x, y ∉ W_F and x ε_F y  iff  x*y ∈ F, for every filter and pair.
  inline lemma_report check_lemma_star(finite_algebra const& A) {
    if (A.star.empty()) {
      throw capability_error("lemma star needs the star table");
    }
    lemma_report R;
    for (filter F : all_filters(A)) {
      elem const g = F.generator;
      for (elem x = 0; x < A.size; ++x) {
        for (elem y = 0; y < A.size; ++y) {
          ++R.cases;
          bool const lhs = detail::in_filter(A, g, A.dom(x))
                           && detail::in_filter(A, g, A.dom(y))
                           && A.mul(g, x) == A.mul(g, y);
          bool const rhs = detail::in_filter(A, g, A.star_at(x, y));
          if (lhs != rhs) {
            R.violations.push_back({g, x, y});
          }
        }
      }
    }
    return R;
  }

  // For a ≰ b: maximally (a,b)-separating filters are exactly the filters
  // maximal with D(a) ∈ F and a*b ∉ F.
  inline lemma_report check_lemma_maxagree(finite_algebra const& A) {
    if (A.star.empty()) {
      throw capability_error("lemma maxagree needs the star table");
    }
    lemma_report R;
    for (elem a = 0; a < A.size; ++a) {
      for (elem b = 0; b < A.size; ++b) {
        if (leq(A, a, b)) {
          continue;
        }
        ++R.cases;
        std::vector<filter> cands;
        for (filter F : all_filters(A)) {
          if (detail::in_filter(A, F.generator, A.dom(a))
              && !detail::in_filter(A, F.generator, A.star_at(a, b))) {
            cands.push_back(F);
          }
        }
        auto lhs = maximal_separating(A, a, b);
        auto rhs = detail::maximal_among(A, cands);
        auto key = [](std::vector<filter> const& fs) {
          std::set<elem> s;
          for (filter f : fs) {
            s.insert(f.generator);
          }
          return s;
        };
        if (key(lhs) != key(rhs)) {
          R.violations.push_back({a, b});
        }
      }
    }
    return R;
  }

  ////////////////////////////////////////////////////////////////////////
  // While-do as nested if-then-else
  ////////////////////////////////////////////////////////////////////////

  template <typename V>
  struct unroll_result {
    std::size_t    n      = 0;
    periodicity    period;     // of D(tα)s
    std::vector<V> v;          // v_0 .. v_n
    V              expected;   // ((t,α):s)
    bool           matches    = false;
    bool           powers_ok  = false;  // (D(tα)s)^k D(tα') <= ((t,α):s), k <= n
  };

  // x = D(tα)s, exit = D(tα'), n = index(x) - 1;
  //   v_0     = x^n exit
  //   v_{k+1} = (x^{n-k-1} t, α)[v_k, x^{n-k-1} exit]
  template <typename Ctx>
  unroll_result<typename Ctx::value_type> while_unroll(
      Ctx const&                      ctx,
      typename Ctx::value_type const& t,
      typename Ctx::value_type const& a,
      typename Ctx::value_type const& s) {
    require_ops(ctx, {op::dom, op::eite, op::whl});
    using V          = typename Ctx::value_type;
    V const x        = ctx.mult(ctx.dom(ctx.mult(t, a)), s);
    V const exit     = ctx.dom(ctx.mult(t, ctx.complement(a)));
    auto    mul      = [&](V const& p, V const& q) { return ctx.mult(p, q); };
    unroll_result<V> R;
    R.period = index_period(x, mul);
    R.n      = R.period.index - 1;
    std::vector<V> pow{ctx.one()};  // x^0 .. x^n
    for (std::size_t k = 1; k <= R.n; ++k) {
      pow.push_back(ctx.mult(pow.back(), x));
    }
    R.v.push_back(ctx.mult(pow[R.n], exit));
    for (std::size_t k = 0; k < R.n; ++k) {
      V const& p = pow[R.n - k - 1];
      R.v.push_back(
          ctx.eite(ctx.mult(p, t), a, R.v.back(), ctx.mult(p, exit)));
    }
    R.expected  = ctx.whl(t, a, s);
    R.matches   = R.v.back() == R.expected;
    R.powers_ok = true;
    V const& w  = R.expected;
    for (std::size_t k = 0; k <= R.n; ++k) {
      V const lhs = ctx.mult(pow[k], exit);
      R.powers_ok = R.powers_ok && ctx.mult(ctx.dom(lhs), w) == lhs;
    }
    return R;
  }

  struct minb_result {
    bool                       ok          = false;  // while is the least solution
    std::size_t                solutions   = 0;
    bool                       alt_differs = false;  // other reading picks otherwise
    std::optional<std::size_t> alt_minimum;          // carrier position
  };

  // Least u in the carrier, under the natural order, with
  //   D(tα)su = D(tα)u  and  D(tα')u = D(tα'),
  // compared with ((t,α):s). The variant reading D(tα)su = D(tα)s is
  // evaluated alongside and differences are flagged.
  template <typename Ctx>
  minb_result minb_check(Ctx const&                      ctx,
                         typename Ctx::value_type const& t,
                         typename Ctx::value_type const& a,
                         typename Ctx::value_type const& s) {
    require_ops(ctx, {op::dom, op::whl});
    using V      = typename Ctx::value_type;
    V const e    = ctx.dom(ctx.mult(t, a));
    V const f    = ctx.dom(ctx.mult(t, ctx.complement(a)));
    V const es   = ctx.mult(e, s);
    V const w    = ctx.whl(t, a, s);
    auto    le   = [&](V const& p, V const& q) {
      return ctx.mult(ctx.dom(p), q) == p;
    };
    auto least = [&](std::vector<std::size_t> const& sols)
        -> std::optional<std::size_t> {
      for (std::size_t i : sols) {
        if (std::all_of(sols.begin(), sols.end(), [&](std::size_t j) {
              return le(ctx.value(i), ctx.value(j));
            })) {
          return i;
        }
      }
      return std::nullopt;
    };
    std::vector<std::size_t> sols, alt;
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      V const& u = ctx.value(i);
      if (!(ctx.mult(f, u) == f)) {
        continue;
      }
      V const esu = ctx.mult(es, u);
      if (esu == ctx.mult(e, u)) {
        sols.push_back(i);
      }
      if (esu == es) {
        alt.push_back(i);
      }
    }
    minb_result R;
    R.solutions     = sols.size();
    auto const m    = least(sols);
    R.ok            = m && ctx.value(*m) == w;
    R.alt_minimum   = least(alt);
    R.alt_differs   = R.alt_minimum != m;
    return R;
  }

}  // namespace nhp
