#pragma once

// Abstract finite two-sorted algebras (S, B) given by operation tables.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "error.hpp"
#include "model.hpp"
#include "ops.hpp"
#include "pfun.hpp"

namespace nhp {

  using elem = std::uint32_t;

  inline constexpr elem no_elem = std::numeric_limits<elem>::max();

  // Optional tables are empty when absent. Index formulas, with m = size and
  // T = tests.size():
  //   mult, star, neq   s*m + t
  //   eite              ((s*T + a)*m + t)*m + u
  //   wc                ((s*m + t)*m + u)*m + v
  //   whl               (t*T + a)*m + s
  // `complement[i]` is the element index of the complement of tests[i].
  struct finite_algebra {
    std::size_t              size = 0;
    elem                     one  = 0;
    elem                     zero = 0;
    std::vector<elem>        mult;
    std::vector<elem>        domain;
    std::vector<elem>        tests;
    std::vector<elem>        complement;
    std::vector<elem>        star;
    std::vector<elem>        neq;
    std::vector<elem>        eite;
    std::vector<elem>        wc;
    std::vector<elem>        whl;
    std::vector<std::string> names;  // optional display names

    elem mul(elem a, elem b) const noexcept {
      return mult[a * size + b];
    }
    bool has_domain() const noexcept {
      return !domain.empty();
    }
    elem dom(elem a) const noexcept {
      return domain[a];
    }
    elem star_at(elem a, elem b) const noexcept {
      return star[a * size + b];
    }
    elem neq_at(elem a, elem b) const noexcept {
      return neq[a * size + b];
    }
    elem eite_at(elem s, std::size_t a, elem t, elem u) const noexcept {
      return eite[((s * tests.size() + a) * size + t) * size + u];
    }
    elem wc_at(elem s, elem t, elem u, elem v) const noexcept {
      return wc[((s * size + t) * size + u) * size + v];
    }
    elem whl_at(elem t, std::size_t a, elem s) const noexcept {
      return whl[(t * tests.size() + a) * size + s];
    }

    // element -> position in `tests`, or npos
    std::vector<std::size_t> test_positions() const {
      std::vector<std::size_t> pos(size, npos);
      for (std::size_t i = 0; i < tests.size(); ++i) {
        if (tests[i] < size) {
          pos[tests[i]] = i;
        }
      }
      return pos;
    }

    std::string name(elem a) const {
      if (a < names.size() && !names[a].empty()) {
        return names[a];
      }
      return std::to_string(a);
    }

    op_set capabilities() const {
      op_set ops;
      if (has_domain()) {
        ops.insert(op::dom);
      }
      if (!star.empty()) {
        ops.insert(op::star);
      }
      if (!neq.empty()) {
        ops.insert(op::neq);
      }
      if (!eite.empty()) {
        ops.insert(op::eite);
      }
      if (!wc.empty()) {
        ops.insert(op::wc);
      }
      if (!whl.empty()) {
        ops.insert(op::whl);
      }
      return ops;
    }

    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
  };

  namespace detail {
    inline void check_table(std::vector<elem> const& table,
                            std::size_t              expected,
                            std::size_t              range,
                            char const*              what,
                            bool                     optional) {
      if (optional && table.empty()) {
        return;
      }
      if (table.size() != expected) {
        throw input_error(std::string("table \"") + what + "\" has "
                          + std::to_string(table.size())
                          + " entries, expected " + std::to_string(expected));
      }
      for (elem e : table) {
        if (e >= range) {
          throw input_error(std::string("table \"") + what + "\" entry "
                            + std::to_string(e) + " out of range");
        }
      }
    }
  }  // namespace detail

  // Throws input_error on malformed table dimensions or out-of-range entries.
  inline void check_dimensions(finite_algebra const& A) {
    std::size_t const m = A.size, T = A.tests.size();
    if (m == 0) {
      throw input_error("algebra has no elements");
    }
    if (A.one >= m || A.zero >= m) {
      throw input_error("one/zero out of range");
    }
    detail::check_table(A.mult, m * m, m, "mult", false);
    detail::check_table(A.domain, m, m, "domain", true);
    detail::check_table(A.tests, T, m, "tests", false);
    detail::check_table(A.complement, T, m, "complement", false);
    detail::check_table(A.star, m * m, m, "star", true);
    detail::check_table(A.neq, m * m, m, "neq", true);
    detail::check_table(A.eite, m * T * m * m, m, "eite", true);
    detail::check_table(A.wc, m * m * m * m, m, "wc", true);
    detail::check_table(A.whl, m * T * m, m, "while", true);
    if (!A.names.empty() && A.names.size() != m) {
      throw input_error("names list does not match algebra size");
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // Validation
  ////////////////////////////////////////////////////////////////////////

  struct violation {
    std::string       invariant;
    std::vector<elem> witness;
  };

  struct validation_report {
    std::vector<violation> violations;

    bool ok() const noexcept {
      return violations.empty();
    }
    bool has(std::string_view invariant) const noexcept {
      return std::any_of(
          violations.begin(), violations.end(), [&](violation const& v) {
            return v.invariant == invariant;
          });
    }
  };

  // Checks that A is a monoid with tests: mult associative with one and zero,
  // tests a commutative idempotent submonoid with zero, complement making
  // (tests, mult, complement) a Boolean algebra with derived join
  // a∨b = (a'b')'. When D is present also D(a) = a on tests and that D(S) is
  // a semilattice. Each failed invariant is reported once with its
  // lexicographically first witness.
  inline validation_report validate(finite_algebra const& A) {
    check_dimensions(A);
    validation_report                      rep;
    std::size_t const                      m = A.size;
    std::map<std::string, bool, std::less<>> seen;
    auto fail = [&](std::string const& inv, std::vector<elem> w) {
      if (!seen[inv]) {
        seen[inv] = true;
        rep.violations.push_back({inv, std::move(w)});
      }
    };

    for (elem a = 0; a < m; ++a) {
      for (elem b = 0; b < m; ++b) {
        elem const ab = A.mul(a, b);
        for (elem c = 0; c < m; ++c) {
          if (A.mul(ab, c) != A.mul(a, A.mul(b, c))) {
            fail("mult-associative", {a, b, c});
          }
        }
      }
      if (A.mul(A.one, a) != a || A.mul(a, A.one) != a) {
        fail("one-identity", {a});
      }
      if (A.mul(A.zero, a) != A.zero || A.mul(a, A.zero) != A.zero) {
        fail("zero-absorbing", {a});
      }
    }

    auto const pos    = A.test_positions();
    auto       istest = [&](elem a) {
      return pos[a] != finite_algebra::npos;
    };
    if (!istest(A.zero)) {
      fail("tests-contain-zero", {A.zero});
    }
    if (!istest(A.one)) {
      fail("tests-contain-one", {A.one});
    }
    {
      std::vector<elem> sorted = A.tests;
      std::sort(sorted.begin(), sorted.end());
      auto dup = std::adjacent_find(sorted.begin(), sorted.end());
      if (dup != sorted.end()) {
        fail("tests-distinct", {*dup});
      }
    }
    for (std::size_t i = 0; i < A.tests.size(); ++i) {
      elem const a  = A.tests[i];
      elem const ac = A.complement[i];
      if (A.mul(a, a) != a) {
        fail("tests-idempotent", {a});
      }
      if (!istest(ac)) {
        fail("complement-is-test", {a});
        continue;
      }
      if (A.complement[pos[ac]] != a) {
        fail("complement-involution", {a});
      }
      if (A.mul(a, ac) != A.zero) {
        fail("complement-meet-zero", {a});
      }
      if (A.has_domain() && A.dom(a) != a) {
        fail("domain-fixes-tests", {a});
      }
      for (elem b : A.tests) {
        if (A.mul(a, b) != A.mul(b, a)) {
          fail("tests-commute", {a, b});
        }
        if (!istest(A.mul(a, b))) {
          fail("tests-closed", {a, b});
        }
      }
    }

    // Boolean-algebra axioms; only meaningful once the sort is closed.
    if (!rep.has("tests-closed") && !rep.has("complement-is-test")) {
      auto comp = [&](elem a) {
        return A.complement[pos[a]];
      };
      auto join = [&](elem a, elem b) {
        return comp(A.mul(comp(a), comp(b)));
      };
      for (elem a : A.tests) {
        if (join(a, comp(a)) != A.one) {
          fail("complement-join-one", {a});
        }
        for (elem b : A.tests) {
          if (join(a, b) != join(b, a)) {
            fail("join-commutative", {a, b});
          }
          if (A.mul(a, join(a, b)) != a) {
            fail("absorption-meet-join", {a, b});
          }
          if (join(a, A.mul(a, b)) != a) {
            fail("absorption-join-meet", {a, b});
          }
          for (elem c : A.tests) {
            if (join(join(a, b), c) != join(a, join(b, c))) {
              fail("join-associative", {a, b, c});
            }
            if (A.mul(a, join(b, c)) != join(A.mul(a, b), A.mul(a, c))) {
              fail("distributive", {a, b, c});
            }
          }
        }
      }
    }

    if (A.has_domain()) {
      std::vector<elem> ds;
      for (elem a = 0; a < m; ++a) {
        if (A.dom(a) == a) {
          ds.push_back(a);
        }
      }
      for (elem e : ds) {
        if (A.mul(e, e) != e) {
          fail("domain-elements-idempotent", {e});
        }
        for (elem f : ds) {
          if (A.mul(e, f) != A.mul(f, e)) {
            fail("domain-elements-commute", {e, f});
          }
          if (A.dom(A.mul(e, f)) != A.mul(e, f)) {
            fail("domain-elements-closed", {e, f});
          }
        }
      }
    }
    return rep;
  }

  // D(S) = {x : D(x) = x}
  inline std::vector<elem> domain_elements(finite_algebra const& A) {
    if (!A.has_domain()) {
      throw capability_error("algebra has no domain table");
    }
    std::vector<elem> out;
    for (elem a = 0; a < A.size; ++a) {
      if (A.dom(a) == a) {
        out.push_back(a);
      }
    }
    return out;
  }

  class order_relation {
   public:
    order_relation() = default;
    explicit order_relation(std::size_t n) : _n(n), _leq(n * n, false) {}

    bool operator()(elem a, elem b) const noexcept {
      return _leq[a * _n + b];
    }
    void set(elem a, elem b, bool v) {
      _leq[a * _n + b] = v;
    }
    std::size_t size() const noexcept {
      return _n;
    }

   private:
    std::size_t       _n = 0;
    std::vector<bool> _leq;
  };

  // s ≤ t iff s = D(s)t
  inline order_relation natural_order(finite_algebra const& A) {
    if (!A.has_domain()) {
      throw capability_error("natural order needs the domain table");
    }
    order_relation r(A.size);
    for (elem s = 0; s < A.size; ++s) {
      for (elem t = 0; t < A.size; ++t) {
        r.set(s, t, A.mul(A.dom(s), t) == s);
      }
    }
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // Partitions, congruences, quotients
  ////////////////////////////////////////////////////////////////////////

  struct partition {
    std::vector<std::vector<elem>> blocks;
  };

  inline partition identity_partition(std::size_t n) {
    partition p;
    for (elem a = 0; a < n; ++a) {
      p.blocks.push_back({a});
    }
    return p;
  }

  // element -> block index; throws unless the blocks partition 0..n-1.
  inline std::vector<std::size_t> block_index(partition const& p,
                                              std::size_t      n) {
    std::vector<std::size_t> idx(n, finite_algebra::npos);
    for (std::size_t b = 0; b < p.blocks.size(); ++b) {
      if (p.blocks[b].empty()) {
        throw input_error("partition has an empty block");
      }
      for (elem a : p.blocks[b]) {
        if (a >= n) {
          throw input_error("partition element " + std::to_string(a)
                            + " out of range");
        }
        if (idx[a] != finite_algebra::npos) {
          throw input_error("element " + std::to_string(a)
                            + " appears in two blocks");
        }
        idx[a] = b;
      }
    }
    for (elem a = 0; a < n; ++a) {
      if (idx[a] == finite_algebra::npos) {
        throw input_error("element " + std::to_string(a)
                          + " is in no block");
      }
    }
    return idx;
  }

  struct congruence_report {
    bool              congruence = true;
    std::string       op;     // first operation found unstable
    std::vector<elem> tuple;  // its arguments, then the substituted element
    bool              mixes_sorts = false;
    std::vector<elem> mixed_block;

    bool quotient_ok() const noexcept {
      return congruence && !mixes_sorts;
    }
  };

  namespace detail {
    // Calls fn(args) for every tuple in the product of the given ranges,
    // in lexicographic order, stopping when fn returns false.
    template <typename F>
    bool for_each_tuple(std::vector<std::size_t> const& radix, F&& fn) {
      std::vector<elem> args(radix.size(), 0);
      for (std::size_t r : radix) {
        if (r == 0) {
          return true;
        }
      }
      while (true) {
        if (!fn(args)) {
          return false;
        }
        std::size_t k = radix.size();
        while (k > 0) {
          --k;
          if (++args[k] < radix[k]) {
            break;
          }
          args[k] = 0;
          if (k == 0) {
            return true;
          }
        }
        if (radix.empty()) {
          return true;
        }
      }
    }
  }  // namespace detail

  // Checks that every present operation maps related arguments to related
  // results: mult, D, star, neq, eite, wc, while, and complement on the
  // test-containing blocks. Substituting one argument at a time by the least
  // member of its block suffices, by transitivity.
  inline congruence_report check_congruence(finite_algebra const& A,
                                            partition const&      theta) {
    check_dimensions(A);
    std::size_t const m   = A.size;
    auto const        blk = block_index(theta, m);
    auto const        pos = A.test_positions();
    std::size_t const T   = A.tests.size();
    congruence_report rep;

    std::vector<elem> rep_elem(theta.blocks.size(), no_elem);
    std::vector<elem> rep_test(theta.blocks.size(), no_elem);
    for (elem a = 0; a < m; ++a) {
      if (rep_elem[blk[a]] == no_elem) {
        rep_elem[blk[a]] = a;
      }
      if (pos[a] != finite_algebra::npos && rep_test[blk[a]] == no_elem) {
        rep_test[blk[a]] = a;
      }
    }
    for (auto const& block : theta.blocks) {
      bool has_test = false, has_other = false;
      for (elem a : block) {
        (pos[a] != finite_algebra::npos ? has_test : has_other) = true;
      }
      if (has_test && has_other) {
        rep.mixes_sorts = true;
        rep.mixed_block = block;
        break;
      }
    }

    // kinds[i] == true marks a test-sorted argument, ranging over test
    // positions rather than elements.
    auto check_op = [&](char const*              name,
                        std::vector<bool> const& kinds,
                        auto&&                   apply) {
      std::vector<std::size_t> radix;
      for (bool k : kinds) {
        radix.push_back(k ? T : m);
      }
      std::vector<elem> alt;
      return detail::for_each_tuple(radix, [&](std::vector<elem> const& args) {
        elem const base = apply(args);
        for (std::size_t i = 0; i < args.size(); ++i) {
          elem const cur = kinds[i] ? A.tests[args[i]] : args[i];
          elem const sub = kinds[i] ? rep_test[blk[cur]] : rep_elem[blk[cur]];
          if (sub == cur) {
            continue;
          }
          alt    = args;
          alt[i] = kinds[i] ? static_cast<elem>(pos[sub]) : sub;
          if (blk[apply(alt)] != blk[base]) {
            rep.congruence = false;
            rep.op         = name;
            rep.tuple.clear();
            for (std::size_t j = 0; j < args.size(); ++j) {
              rep.tuple.push_back(kinds[j] ? A.tests[args[j]] : args[j]);
            }
            rep.tuple.push_back(sub);
            return false;
          }
        }
        return true;
      });
    };

    using v = std::vector<elem>;
    if (!check_op("mult", {false, false}, [&](v const& x) {
          return A.mul(x[0], x[1]);
        })) {
      return rep;
    }
    if (A.has_domain()
        && !check_op("D", {false}, [&](v const& x) { return A.dom(x[0]); })) {
      return rep;
    }
    if (!A.star.empty() && !check_op("star", {false, false}, [&](v const& x) {
          return A.star_at(x[0], x[1]);
        })) {
      return rep;
    }
    if (!A.neq.empty() && !check_op("neq", {false, false}, [&](v const& x) {
          return A.neq_at(x[0], x[1]);
        })) {
      return rep;
    }
    if (!check_op("complement", {true}, [&](v const& x) {
          return A.complement[x[0]];
        })) {
      return rep;
    }
    if (!A.eite.empty()
        && !check_op("eite", {false, true, false, false}, [&](v const& x) {
             return A.eite_at(x[0], x[1], x[2], x[3]);
           })) {
      return rep;
    }
    if (!A.wc.empty()
        && !check_op("wc", {false, false, false, false}, [&](v const& x) {
             return A.wc_at(x[0], x[1], x[2], x[3]);
           })) {
      return rep;
    }
    if (!A.whl.empty()
        && !check_op("while", {false, true, false}, [&](v const& x) {
             return A.whl_at(x[0], x[1], x[2]);
           })) {
      return rep;
    }
    return rep;
  }

  class quotient_error : public input_error {
   public:
    explicit quotient_error(congruence_report r)
        : input_error(describe(r)), _report(std::move(r)) {}

    congruence_report const& report() const noexcept {
      return _report;
    }

   private:
    static std::string describe(congruence_report const& r) {
      if (!r.congruence) {
        std::string s = "partition is not a congruence: operation " + r.op
                        + " unstable at (";
        for (std::size_t i = 0; i < r.tuple.size(); ++i) {
          s += (i ? "," : "") + std::to_string(r.tuple[i]);
        }
        return s + ")";
      }
      return "partition mixes test and non-test elements";
    }
    congruence_report _report;
  };

  // Carrier = blocks ordered by least member; tests = blocks containing a
  // test. Display names are taken from each block's least member.
  inline finite_algebra quotient(finite_algebra const& A,
                                 partition const&      theta) {
    auto rep = check_congruence(A, theta);
    if (!rep.quotient_ok()) {
      throw quotient_error(std::move(rep));
    }
    std::size_t const m = A.size;
    auto const        raw = block_index(theta, m);
    // renumber blocks by least member
    std::vector<std::size_t> order(theta.blocks.size());
    std::vector<elem>        least(theta.blocks.size(), no_elem);
    for (elem a = 0; a < m; ++a) {
      least[raw[a]] = std::min(least[raw[a]], a);
    }
    for (std::size_t b = 0; b < order.size(); ++b) {
      order[b] = b;
    }
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return least[x] < least[y];
    });
    std::vector<elem> renum(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      renum[order[i]] = static_cast<elem>(i);
    }
    auto q = [&](elem a) {
      return renum[raw[a]];
    };
    std::size_t const qm = order.size();
    std::vector<elem> rep_of(qm);
    for (std::size_t i = 0; i < qm; ++i) {
      rep_of[i] = least[order[i]];
    }

    auto const     pos = A.test_positions();
    finite_algebra Q;
    Q.size = qm;
    Q.one  = q(A.one);
    Q.zero = q(A.zero);
    Q.mult.resize(qm * qm);
    for (elem a = 0; a < qm; ++a) {
      for (elem b = 0; b < qm; ++b) {
        Q.mult[a * qm + b] = q(A.mul(rep_of[a], rep_of[b]));
      }
    }
    if (A.has_domain()) {
      Q.domain.resize(qm);
      for (elem a = 0; a < qm; ++a) {
        Q.domain[a] = q(A.dom(rep_of[a]));
      }
    }
    // test sort: blocks whose representative is a test (blocks are not mixed)
    std::vector<std::size_t> qpos(qm, finite_algebra::npos);
    for (elem a = 0; a < qm; ++a) {
      if (pos[rep_of[a]] != finite_algebra::npos) {
        qpos[a] = Q.tests.size();
        Q.tests.push_back(a);
      }
    }
    std::size_t const QT = Q.tests.size();
    for (elem a : Q.tests) {
      Q.complement.push_back(q(A.complement[pos[rep_of[a]]]));
    }
    auto binary = [&](std::vector<elem> const& src, std::vector<elem>& dst) {
      if (src.empty()) {
        return;
      }
      dst.resize(qm * qm);
      for (elem a = 0; a < qm; ++a) {
        for (elem b = 0; b < qm; ++b) {
          dst[a * qm + b] = q(src[rep_of[a] * m + rep_of[b]]);
        }
      }
    };
    binary(A.star, Q.star);
    binary(A.neq, Q.neq);
    if (!A.eite.empty()) {
      Q.eite.resize(qm * QT * qm * qm);
      for (elem s = 0; s < qm; ++s) {
        for (std::size_t a = 0; a < QT; ++a) {
          std::size_t const ap = pos[rep_of[Q.tests[a]]];
          for (elem t = 0; t < qm; ++t) {
            for (elem u = 0; u < qm; ++u) {
              Q.eite[((s * QT + a) * qm + t) * qm + u]
                  = q(A.eite_at(rep_of[s], ap, rep_of[t], rep_of[u]));
            }
          }
        }
      }
    }
    if (!A.wc.empty()) {
      Q.wc.resize(qm * qm * qm * qm);
      for (elem s = 0; s < qm; ++s) {
        for (elem t = 0; t < qm; ++t) {
          for (elem u = 0; u < qm; ++u) {
            for (elem v = 0; v < qm; ++v) {
              Q.wc[((s * qm + t) * qm + u) * qm + v] = q(
                  A.wc_at(rep_of[s], rep_of[t], rep_of[u], rep_of[v]));
            }
          }
        }
      }
    }
    if (!A.whl.empty()) {
      Q.whl.resize(qm * QT * qm);
      for (elem t = 0; t < qm; ++t) {
        for (std::size_t a = 0; a < QT; ++a) {
          std::size_t const ap = pos[rep_of[Q.tests[a]]];
          for (elem s = 0; s < qm; ++s) {
            Q.whl[(t * QT + a) * qm + s]
                = q(A.whl_at(rep_of[t], ap, rep_of[s]));
          }
        }
      }
    }
    if (!A.names.empty()) {
      for (elem a = 0; a < qm; ++a) {
        Q.names.push_back(A.name(rep_of[a]));
      }
    }
    return Q;
  }

  ////////////////////////////////////////////////////////////////////////
  // Table algebras of concrete models
  ////////////////////////////////////////////////////////////////////////

  class closure_overflow : public input_error {
   public:
    closure_overflow(std::size_t bound, std::size_t frontier)
        : input_error("closure exceeded bound of " + std::to_string(bound)
                      + " new elements (last frontier size "
                      + std::to_string(frontier) + ")"),
          _frontier(frontier) {}

    std::size_t frontier() const noexcept {
      return _frontier;
    }

   private:
    std::size_t _frontier;
  };

  // A concrete model closed under a set of operations, with the resulting
  // table algebra. elements[i] is the partial map denoted by element i.
  struct model_closure {
    std::size_t              points = 0;
    std::vector<partial_map> elements;
    std::size_t              generators = 0;
    finite_algebra           algebra;

    elem find(partial_map const& m) const {
      auto it = std::find(elements.begin(), elements.end(), m);
      return it == elements.end() ? no_elem
                                  : static_cast<elem>(it - elements.begin());
    }

    elem find(std::string_view name) const {
      auto const& n = algebra.names;
      auto        it = std::find(n.begin(), n.end(), name);
      return it == n.end() ? no_elem : static_cast<elem>(it - n.begin());
    }
  };

  inline constexpr std::size_t default_closure_bound = 100000;

  // Closes the model's maps and tests under composition and the listed
  // operations, then emits tables for them. Elements are numbered 0 = null,
  // 1 = identity, then the named maps and tests in file order, then closure
  // elements in discovery order. Tests are first closed to a Boolean algebra.
  inline model_closure from_model(concrete_model const& model,
                                  op_set                close_under,
                                  std::size_t bound = default_closure_bound) {
    for (op o : {op::antidom, op::bowtie, op::cup}) {
      if (close_under.contains(o)) {
        throw capability_error(std::string("from_model cannot tabulate ")
                               + std::string(op_name(o)));
      }
    }
    std::size_t const n = model.points;
    model_closure     out;
    out.points = n;
    std::unordered_map<partial_map, elem, partial_map_hash> index;
    std::vector<std::string>                                names;
    std::size_t                                             seeded = 0;

    auto add = [&](partial_map m, std::string name) -> elem {
      detail::require_same_space(n, m.size());
      auto [it, fresh] = index.try_emplace(m, static_cast<elem>(out.elements.size()));
      if (fresh) {
        out.elements.push_back(std::move(m));
        names.push_back(std::move(name));
        if (seeded != 0 && out.elements.size() - seeded > bound) {
          throw closure_overflow(bound, out.elements.size() - seeded);
        }
      }
      return it->second;
    };

    elem const zero = add(partial_map::null(n), "0");
    elem const one  = add(partial_map::identity(n), "1");
    for (auto const& [name, m] : model.maps) {
      add(m, name);
    }

    // Boolean closure of the tests
    // on the empty point set 0 and 1 coincide
    std::vector<elem> tests = {zero};
    if (one != zero) {
      tests.push_back(one);
    }
    auto add_test = [&](partial_map m, std::string name) {
      elem e = add(std::move(m), std::move(name));
      if (std::find(tests.begin(), tests.end(), e) == tests.end()) {
        tests.push_back(e);
      }
    };
    for (auto const& [name, t] : model.tests) {
      add_test(t.as_map(), name);
    }
    for (std::size_t done = 0; done < tests.size(); ++done) {
      std::size_t const limit = tests.size();
      for (std::size_t i = 0; i <= done && i < limit; ++i) {
        partial_map const a = out.elements[tests[done]];
        partial_map const b = out.elements[tests[i]];
        add_test(compose(a, b),
                 "(" + names[tests[done]] + ";" + names[tests[i]] + ")");
        add_test(test_complement(test_set::from_map(a)).as_map(),
                 "not(" + names[tests[done]] + ")");
      }
    }
    seeded         = out.elements.size();
    out.generators = seeded;

    // semi-naive closure rounds
    std::size_t lo = 0;
    while (true) {
      std::size_t const hi = out.elements.size();
      if (lo == hi) {
        break;
      }
      auto touches = [&](std::initializer_list<std::size_t> xs) {
        for (std::size_t x : xs) {
          if (x >= lo) {
            return true;
          }
        }
        return false;
      };
      for (elem a = 0; a < hi; ++a) {
        for (elem b = 0; b < hi; ++b) {
          if (!touches({a, b})) {
            continue;
          }
          // copies: add() may reallocate elements
          partial_map const x = out.elements[a];
          partial_map const y = out.elements[b];
          add(compose(x, y), "(" + names[a] + ";" + names[b] + ")");
          if (close_under.contains(op::star)) {
            add(agree_star(x, y).as_map(),
                "star(" + names[a] + "," + names[b] + ")");
          }
          if (close_under.contains(op::neq)) {
            add(disagree(x, y).as_map(),
                "neq(" + names[a] + "," + names[b] + ")");
          }
          if (close_under.contains(op::whl)) {
            for (elem al : tests) {
              add(detail::ext_while(x, out.elements[al], y),
                  "while(" + names[a] + "," + names[al] + "," + names[b]
                      + ")");
            }
          }
          if (close_under.contains(op::eite) || close_under.contains(op::wc)) {
            for (elem c = 0; c < hi; ++c) {
              for (elem d = 0; d < hi; ++d) {
                if (!touches({a, b, c, d})) {
                  continue;
                }
                if (close_under.contains(op::wc)) {
                  add(weak_cmp(x, y, out.elements[c], out.elements[d]),
                      "wc(" + names[a] + "," + names[b] + "," + names[c] + ","
                          + names[d] + ")");
                }
              }
              if (close_under.contains(op::eite) && touches({a, b, c})) {
                for (elem al : tests) {
                  add(detail::ext_ite(
                          x, out.elements[al], y, out.elements[c]),
                      "ite(" + names[a] + "," + names[al] + "," + names[b]
                          + "," + names[c] + ")");
                }
              }
            }
          }
        }
        if (a >= lo && close_under.contains(op::dom)) {
          add(domain_of(out.elements[a]).as_map(), "D(" + names[a] + ")");
        }
      }
      lo = hi;
    }

    // tables
    finite_algebra&   A = out.algebra;
    std::size_t const m = out.elements.size();
    A.size              = m;
    A.zero              = zero;
    A.one               = one;
    A.names             = std::move(names);
    auto idx            = [&](partial_map const& x) {
      auto it = index.find(x);
      if (it == index.end()) {
        throw invariant_error("closure is missing an element");
      }
      return it->second;
    };
    auto const& E = out.elements;
    A.mult.resize(m * m);
    for (elem a = 0; a < m; ++a) {
      for (elem b = 0; b < m; ++b) {
        A.mult[a * m + b] = idx(compose(E[a], E[b]));
      }
    }
    A.tests = tests;
    for (elem t : tests) {
      A.complement.push_back(
          idx(test_complement(test_set::from_map(E[t])).as_map()));
    }
    std::size_t const T = tests.size();
    if (close_under.contains(op::dom)) {
      A.domain.resize(m);
      for (elem a = 0; a < m; ++a) {
        A.domain[a] = idx(domain_of(E[a]).as_map());
      }
    }
    if (close_under.contains(op::star) || close_under.contains(op::neq)) {
      for (elem a = 0; a < m; ++a) {
        for (elem b = 0; b < m; ++b) {
          if (close_under.contains(op::star)) {
            A.star.push_back(idx(agree_star(E[a], E[b]).as_map()));
          }
          if (close_under.contains(op::neq)) {
            A.neq.push_back(idx(disagree(E[a], E[b]).as_map()));
          }
        }
      }
    }
    if (close_under.contains(op::eite)) {
      A.eite.reserve(m * T * m * m);
      for (elem s = 0; s < m; ++s) {
        for (elem al : tests) {
          for (elem t = 0; t < m; ++t) {
            for (elem u = 0; u < m; ++u) {
              A.eite.push_back(idx(detail::ext_ite(E[s], E[al], E[t], E[u])));
            }
          }
        }
      }
    }
    if (close_under.contains(op::wc)) {
      A.wc.reserve(m * m * m * m);
      for (elem s = 0; s < m; ++s) {
        for (elem t = 0; t < m; ++t) {
          for (elem u = 0; u < m; ++u) {
            for (elem v = 0; v < m; ++v) {
              A.wc.push_back(idx(weak_cmp(E[s], E[t], E[u], E[v])));
            }
          }
        }
      }
    }
    if (close_under.contains(op::whl)) {
      A.whl.reserve(m * T * m);
      for (elem t = 0; t < m; ++t) {
        for (elem al : tests) {
          for (elem s = 0; s < m; ++s) {
            A.whl.push_back(idx(detail::ext_while(E[t], E[al], E[s])));
          }
        }
      }
    }
    return out;
  }

  // Resolves a partition given by element names against a closure.
  // All maps on n points as a model: restrictions of the identity become
  // tests, the rest maps. Names spell the image, "u" for undefined, e.g.
  // "f1u" or "t01".
  inline concrete_model full_concrete_model(std::size_t n) {
    auto const     fm = full_model(n);
    concrete_model m;
    m.points = n;
    auto spell = [](partial_map const& f) {
      std::string s;
      for (point y : f.image()) {
        s += y == undefined ? std::string("u") : std::to_string(y);
      }
      return s;
    };
    for (auto const& f : fm.maps) {
      if (!f.is_restricted_identity()) {
        m.add_map("f" + spell(f), f);
      }
    }
    for (auto const& t : fm.tests) {
      m.add_test("t" + spell(t.as_map()), t);
    }
    return m;
  }

  inline partition resolve_partition(
      model_closure const&                         mc,
      std::vector<std::vector<std::string>> const& named) {
    partition         p;
    std::vector<bool> used(mc.elements.size(), false);
    for (auto const& block : named) {
      std::vector<elem> b;
      for (auto const& name : block) {
        elem e = mc.find(name);
        if (e == no_elem) {
          throw input_error("partition names unknown element \"" + name
                            + "\"");
        }
        b.push_back(e);
        used[e] = true;
      }
      p.blocks.push_back(std::move(b));
    }
    for (elem a = 0; a < mc.elements.size(); ++a) {
      if (!used[a]) {
        p.blocks.push_back({a});
      }
    }
    return p;
  }

  ////////////////////////////////////////////////////////////////////////
  // Periodicity
  ////////////////////////////////////////////////////////////////////////

  // x^index = x^(index + period), both minimal, index >= 1.
  struct periodicity {
    std::size_t index  = 1;
    std::size_t period = 1;

    friend bool operator==(periodicity, periodicity) = default;
  };

  template <typename T, typename Mul>
  periodicity index_period(T const& x, Mul&& mul) {
    std::map<T, std::size_t> seen;
    T                        cur = x;
    for (std::size_t k = 1;; ++k) {
      auto [it, fresh] = seen.try_emplace(cur, k);
      if (!fresh) {
        return {it->second, k - it->second};
      }
      cur = mul(cur, x);
    }
  }

  struct periodic_report {
    bool                     periodic = true;  // always, S being finite
    std::vector<periodicity> per_element;
  };

  inline periodic_report is_periodic(finite_algebra const& A) {
    periodic_report r;
    for (elem a = 0; a < A.size; ++a) {
      r.per_element.push_back(
          index_period(a, [&](elem x, elem y) { return A.mul(x, y); }));
    }
    return r;
  }

}  // namespace nhp
