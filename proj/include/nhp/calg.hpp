#pragma once

// Generalised predicates: binary operators P[x,y] induced by extended
// if-then-else and weak comparison, closed under the sequential connectives
//   (P∧Q)[x,y] = P[Q[x,y],y],  (P∨Q)[x,y] = P[x,Q[x,y]],  (¬P)[x,y] = P[y,x].
// Predicates are identified by their tables over carrier pairs.

#include <algorithm>
#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "algebra.hpp"
#include "context.hpp"
#include "error.hpp"
#include "terms.hpp"

namespace nhp {

  struct gen_predicate {
    std::vector<std::size_t> table;  // carrier position of P[x,y] at x*n + y
    std::string              expr;
  };

  namespace detail {
    struct table_hash {
      std::size_t operator()(std::vector<std::size_t> const& t) const noexcept {
        std::size_t h = 1469598103934665603ULL;
        for (std::size_t v : t) {
          h = (h ^ v) * 1099511628211ULL;
        }
        return h;
      }
    };

    template <typename Ctx>
    std::size_t position(Ctx const& ctx, typename Ctx::value_type const& v) {
      std::size_t const i = ctx.index_of(v);
      if (i == npos) {
        throw input_error("carrier is not closed under the predicate operations");
      }
      return i;
    }
  }  // namespace detail

  // One predicate per (a, α) and, with weak comparison, per (a, b).
  template <typename Ctx>
  std::vector<gen_predicate> basic_predicates(Ctx const& ctx) {
    require_ops(ctx, {op::eite});
    std::size_t const          n = ctx.size();
    std::vector<gen_predicate> out;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t al : ctx.tests()) {
        gen_predicate P{std::vector<std::size_t>(n * n),
                        "(" + ctx.name(a) + "," + ctx.name(al) + ")"};
        for (std::size_t x = 0; x < n; ++x) {
          for (std::size_t y = 0; y < n; ++y) {
            P.table[x * n + y] = detail::position(
                ctx, ctx.eite(ctx.value(a), ctx.value(al), ctx.value(x),
                              ctx.value(y)));
          }
        }
        out.push_back(std::move(P));
      }
    }
    if (ctx.has(op::wc)) {
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          gen_predicate P{std::vector<std::size_t>(n * n),
                          "(" + ctx.name(a) + "=" + ctx.name(b) + ")"};
          for (std::size_t x = 0; x < n; ++x) {
            for (std::size_t y = 0; y < n; ++y) {
              P.table[x * n + y] = detail::position(
                  ctx, ctx.wc(ctx.value(a), ctx.value(b), ctx.value(x),
                              ctx.value(y)));
            }
          }
          out.push_back(std::move(P));
        }
      }
    }
    return out;
  }

  enum class connective { conj, disj, neg };

  inline gen_predicate apply(connective           c,
                             gen_predicate const& P,
                             gen_predicate const* Q = nullptr) {
    std::size_t n = 0;
    while (n * n < P.table.size()) {
      ++n;
    }
    if (c != connective::neg
        && (Q == nullptr || Q->table.size() != P.table.size())) {
      throw input_error("binary connective needs two predicates on one carrier");
    }
    gen_predicate R{std::vector<std::size_t>(n * n), {}};
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        std::size_t& r = R.table[x * n + y];
        switch (c) {
          case connective::conj:
            r = P.table[Q->table[x * n + y] * n + y];
            break;
          case connective::disj:
            r = P.table[x * n + Q->table[x * n + y]];
            break;
          case connective::neg:
            r = P.table[y * n + x];
            break;
        }
      }
    }
    switch (c) {
      case connective::conj:
        R.expr = "(" + P.expr + " & " + Q->expr + ")";
        break;
      case connective::disj:
        R.expr = "(" + P.expr + " | " + Q->expr + ")";
        break;
      case connective::neg:
        R.expr = "~" + P.expr;
        break;
    }
    return R;
  }

  struct bstar {
    std::size_t                           carrier = 0;
    std::vector<gen_predicate>            preds;
    std::vector<std::size_t>              embedded;  // per ctx test: (1,α)
    std::vector<std::vector<std::size_t>> conj, disj;
    std::vector<std::size_t>              neg;

    std::size_t find(std::vector<std::size_t> const& table) const {
      for (std::size_t i = 0; i < preds.size(); ++i) {
        if (preds[i].table == table) {
          return i;
        }
      }
      return npos;
    }
  };

  // Closure of the basic predicates under ∧, ∨, ¬. Throws closure_overflow
  // when more than `bound` distinct predicates arise.
  template <typename Ctx>
  bstar generate_bstar(Ctx const& ctx, std::size_t bound = 4096) {
    bstar B;
    B.carrier = ctx.size();
    std::unordered_map<std::vector<std::size_t>, std::size_t, detail::table_hash>
         index;
    auto add = [&](gen_predicate&& P, std::size_t pending) {
      auto [it, fresh] = index.try_emplace(P.table, B.preds.size());
      if (fresh) {
        if (B.preds.size() >= bound) {
          throw closure_overflow(bound, pending);
        }
        B.preds.push_back(std::move(P));
      }
      return it->second;
    };
    for (auto& P : basic_predicates(ctx)) {
      add(std::move(P), 0);
    }
    for (std::size_t al : ctx.tests()) {
      std::size_t const n = ctx.size();
      std::vector<std::size_t> t(n * n);
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
          t[x * n + y] = detail::position(
              ctx, ctx.eite(ctx.one(), ctx.value(al), ctx.value(x), ctx.value(y)));
        }
      }
      B.embedded.push_back(index.at(t));
    }
    // Each pair is combined once both members exist; results are recorded.
    for (std::size_t i = 0; i < B.preds.size(); ++i) {
      std::size_t const pending = B.preds.size() - i;
      B.neg.push_back(add(apply(connective::neg, B.preds[i]), pending));
      B.conj.emplace_back(i + 1);
      B.disj.emplace_back(i + 1);
      for (std::size_t j = 0; j <= i; ++j) {
        B.conj[i][j] = add(apply(connective::conj, B.preds[i], &B.preds[j]),
                           pending);
        B.disj[i][j] = add(apply(connective::disj, B.preds[i], &B.preds[j]),
                           pending);
        if (j < i) {
          B.conj[j].push_back(add(
              apply(connective::conj, B.preds[j], &B.preds[i]), pending));
          B.disj[j].push_back(add(
              apply(connective::disj, B.preds[j], &B.preds[i]), pending));
        }
      }
    }
    return B;
  }

  struct bstar_laws {
    bool        involution = true;
    bool        conj_assoc = true;
    bool        disj_assoc = true;
    bool        embeds     = true;  // distinct tests give distinct predicates
    bool ok() const noexcept {
      return involution && conj_assoc && disj_assoc && embeds;
    }
  };

  inline bstar_laws check_bstar_laws(bstar const& B) {
    bstar_laws        L;
    std::size_t const m = B.preds.size();
    for (std::size_t p = 0; p < m; ++p) {
      L.involution = L.involution && B.neg[B.neg[p]] == p;
      for (std::size_t q = 0; q < m; ++q) {
        for (std::size_t r = 0; r < m; ++r) {
          L.conj_assoc = L.conj_assoc
                         && B.conj[B.conj[p][q]][r] == B.conj[p][B.conj[q][r]];
          L.disj_assoc = L.disj_assoc
                         && B.disj[B.disj[p][q]][r] == B.disj[p][B.disj[q][r]];
        }
      }
    }
    std::vector<std::size_t> seen(B.embedded);
    std::sort(seen.begin(), seen.end());
    L.embeds = std::adjacent_find(seen.begin(), seen.end()) == seen.end();
    return L;
  }

  ////////////////////////////////////////////////////////////////////////
  // Three-valued traces on concrete contexts
  ////////////////////////////////////////////////////////////////////////

  // 'T' where P[1,0] is defined, 'F' where P[0,1] is, 'U' elsewhere.
  inline std::string trace(map_context const& ctx, gen_predicate const& P) {
    std::size_t const n    = ctx.size();
    std::size_t const one  = ctx.index_of(ctx.one());
    std::size_t const zero = ctx.index_of(ctx.zero());
    if (one == npos || zero == npos) {
      throw input_error("traces need 0 and 1 in the carrier");
    }
    partial_map const& t = ctx.value(P.table[one * n + zero]);
    partial_map const& f = ctx.value(P.table[zero * n + one]);
    std::string        out(ctx.points(), 'U');
    for (point z = 0; z < ctx.points(); ++z) {
      if (t.defined(z) && f.defined(z)) {
        out[z] = '?';
      } else if (t.defined(z)) {
        out[z] = 'T';
      } else if (f.defined(z)) {
        out[z] = 'F';
      }
    }
    return out;
  }

  inline char trace_conj(char p, char q) {
    if (p == 'T' && q == 'T') {
      return 'T';
    }
    if (p == 'F' || (p != 'U' && q == 'F')) {
      return 'F';
    }
    return 'U';
  }
  inline char trace_disj(char p, char q) {
    if (p == 'T' || (p != 'U' && q == 'T')) {
      return 'T';
    }
    if (p == 'F' && q == 'F') {
      return 'F';
    }
    return 'U';
  }
  inline char trace_neg(char p) {
    return p == 'T' ? 'F' : p == 'F' ? 'T' : p;
  }

  struct three_valued_report {
    std::size_t              predicates = 0;
    std::size_t              table_mismatches = 0;  // trace fails to determine table
    std::size_t              conj_mismatches  = 0;
    std::size_t              disj_mismatches  = 0;
    std::size_t              neg_mismatches   = 0;
    // states observed in the asymmetric cases
    std::size_t              conj_false_undef = 0;  // P false, Q undefined
    std::size_t              disj_undef_true  = 0;  // P undefined, Q true
    std::vector<std::string> traces;

    bool ok() const noexcept {
      return table_mismatches + conj_mismatches + disj_mismatches
                 + neg_mismatches
             == 0;
    }
  };

  inline three_valued_report three_valued_check(map_context const& ctx,
                                                bstar const&       B) {
    three_valued_report R;
    std::size_t const   n = ctx.size();
    R.predicates        = B.preds.size();
    for (auto const& P : B.preds) {
      R.traces.push_back(trace(ctx, P));
    }
    for (std::size_t p = 0; p < B.preds.size(); ++p) {
      std::string const& tp = R.traces[p];
      bool               determined = tp.find('?') == std::string::npos;
      for (std::size_t x = 0; x < n && determined; ++x) {
        for (std::size_t y = 0; y < n && determined; ++y) {
          partial_map const& got = ctx.value(B.preds[p].table[x * n + y]);
          for (point z = 0; z < ctx.points(); ++z) {
            point const want = tp[z] == 'T'   ? ctx.value(x)(z)
                               : tp[z] == 'F' ? ctx.value(y)(z)
                                              : undefined;
            determined = determined && got(z) == want;
          }
        }
      }
      R.table_mismatches += !determined;
      std::string const& tn = R.traces[B.neg[p]];
      for (point z = 0; z < ctx.points(); ++z) {
        R.neg_mismatches += tn[z] != trace_neg(tp[z]);
      }
      for (std::size_t q = 0; q < B.preds.size(); ++q) {
        std::string const& tq = R.traces[q];
        std::string const& tc = R.traces[B.conj[p][q]];
        std::string const& td = R.traces[B.disj[p][q]];
        for (point z = 0; z < ctx.points(); ++z) {
          R.conj_mismatches += tc[z] != trace_conj(tp[z], tq[z]);
          R.disj_mismatches += td[z] != trace_disj(tp[z], tq[z]);
          R.conj_false_undef += tp[z] == 'F' && tq[z] == 'U';
          R.disj_undef_true += tp[z] == 'U' && tq[z] == 'T';
        }
      }
    }
    return R;
  }

}  // namespace nhp
