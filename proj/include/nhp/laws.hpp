#pragma once

// Named laws as data, suites of laws, and the exhaustive or sampled checker.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "context.hpp"
#include "detail/rng.hpp"
#include "error.hpp"
#include "terms.hpp"

namespace nhp {

  struct equation {
    term lhs;
    term rhs;
  };

  // Pure equations have no premises. "x <= y" is stored as x = D(x);y.
  struct law {
    std::string                               name;
    std::vector<std::pair<std::string, sort>> vars;
    std::vector<equation>                     premises;
    std::vector<equation>                     conclusions;
    std::string                               text;

    bool is_implication() const noexcept {
      return !premises.empty();
    }
  };

  namespace detail {
    inline equation parse_equation(std::string_view text, sort_env const& env) {
      std::size_t le = text.find("<=");
      if (le != std::string_view::npos) {
        term lhs = parse(text.substr(0, le), env);
        term rhs = parse(text.substr(le + 2), env);
        return {lhs, make_term(node_kind::compose, {D(lhs), rhs})};
      }
      std::size_t eq = text.find('=');
      if (eq == std::string_view::npos) {
        throw input_error("equation without '=': " + std::string(text));
      }
      return {parse(text.substr(0, eq), env), parse(text.substr(eq + 1), env)};
    }

    // vars: space-separated names, element-sorted unless suffixed ":test"
    // or ":dom" (domain elements), e.g. "s b:test t u".
    inline law make_law(std::string                     name,
                        std::string_view                vars,
                        std::vector<std::string> const& premises,
                        std::vector<std::string> const& conclusions) {
      law      l;
      sort_env env;
      while (!vars.empty()) {
        std::size_t const sp   = vars.find(' ');
        std::string_view  word = vars.substr(0, sp);
        vars = sp == std::string_view::npos ? std::string_view{}
                                            : vars.substr(sp + 1);
        if (word.empty()) {
          continue;
        }
        sort              s     = sort::elem;
        std::size_t const colon = word.find(':');
        if (colon != std::string_view::npos) {
          s    = word.substr(colon + 1) == "test" ? sort::test : sort::domelem;
          word = word.substr(0, colon);
        }
        l.vars.emplace_back(std::string(word), s);
        env[std::string(word)] = s;
      }
      l.name = std::move(name);
      for (auto const& p : premises) {
        l.premises.push_back(parse_equation(p, env));
        l.text += (l.text.empty() ? "" : ", ") + p;
      }
      if (!premises.empty()) {
        l.text += " => ";
      }
      std::string concl;
      for (auto const& c : conclusions) {
        l.conclusions.push_back(parse_equation(c, env));
        concl += (concl.empty() ? "" : ", ") + c;
      }
      l.text += concl;
      return l;
    }
  }  // namespace detail

  inline std::vector<law> const& registry() {
    using detail::make_law;
    static std::vector<law> const all = {
        // monoid with tests
        make_law("assoc", "s t u", {}, {"s;t;u = s;(t;u)"}),
        make_law("one-left", "s", {}, {"1;s = s"}),
        make_law("one-right", "s", {}, {"s;1 = s"}),
        make_law("zero-left", "s", {}, {"0;s = 0"}),
        make_law("zero-right", "s", {}, {"s;0 = 0"}),
        make_law("test-commute", "a:test b:test", {}, {"a;b = b;a"}),
        make_law("test-idempotent", "a:test", {}, {"a;a = a"}),
        make_law("test-complement-zero", "a:test", {}, {"a;not(a) = 0"}),
        make_law("test-involution", "a:test", {}, {"not(not(a)) = a"}),
        make_law("join-commutative",
                 "a:test b:test",
                 {},
                 {"not(not(a);not(b)) = not(not(b);not(a))"}),
        make_law("join-associative",
                 "a:test b:test c:test",
                 {},
                 {"not(not(not(not(a);not(b)));not(c)) = "
                  "not(not(a);not(not(not(b);not(c))))"}),
        make_law("absorption-meet-join",
                 "a:test b:test",
                 {},
                 {"a;not(not(a);not(b)) = a"}),
        make_law("absorption-join-meet",
                 "a:test b:test",
                 {},
                 {"not(not(a);not(a;b)) = a"}),
        make_law("distributive",
                 "a:test b:test c:test",
                 {},
                 {"a;not(not(b);not(c)) = not(not(a;b);not(a;c))"}),
        make_law("complement-join-one",
                 "a:test",
                 {},
                 {"not(not(a);not(not(a))) = 1"}),

        // restriction monoids with tests
        make_law("D1", "s", {}, {"D(s);s = s"}),
        make_law("Dleft", "s t", {}, {"D(s;t) = D(s);D(s;t)"}),
        make_law("Dcom", "s t", {}, {"D(s);D(t) = D(t);D(s)"}),
        make_law("DD", "s", {}, {"D(D(s)) = D(s)"}),
        make_law("Dtwisted", "s t", {}, {"s;D(t) = D(s;t);s"}),
        make_law("DT1", "a:test", {}, {"D(a) = a"}),
        make_law("DT2",
                 "s b:test t u",
                 {"D(s;b);t = D(s;b);u", "D(s;not(b));t = D(s;not(b));u"},
                 {"D(s);t = D(s);u"}),
        // consequences used as sanity checks
        make_law("Dlocal", "s t", {}, {"D(s;t) = D(s;D(t))"}),
        make_law("Didem", "s", {}, {"D(s);D(s) = D(s)"}),
        make_law("Dmeet", "s t", {}, {"D(D(s);D(t)) = D(s);D(t)"}),

        // extended if-then-else
        make_law("EITE1", "s a:test t", {}, {"D(s);t = ite(s,a,t,t)"}),
        make_law("EITE2",
                 "s a:test t u",
                 {},
                 {"D(s;a);ite(s,a,t,u) = D(s;a);t"}),
        make_law("EITE3",
                 "s a:test t u",
                 {},
                 {"D(s;not(a));ite(s,a,t,u) = D(s;not(a));u"}),
        make_law("EITE4",
                 "s a:test t u",
                 {},
                 {"ite(s,a,t,u) = ite(s,a,D(s;a);t,D(s;not(a));u)"}),
        make_law("EITE5", "s a:test t u", {}, {"D(ite(s,a,t,u)) <= D(s)"}),
        make_law("EITEmul",
                 "s v a:test t u",
                 {},
                 {"s;ite(v,a,t,u) = ite(s;v,a,s;t,s;u)"}),

        // twisted agreeable
        make_law("A1", "s", {}, {"star(s,s);s = s"}),
        make_law("Acom", "s t", {}, {"star(s,t) = star(t,s)"}),
        make_law("Aeq", "s t", {}, {"star(s,t);s = star(s,t);t"}),
        make_law("Anorm",
                 "s t u v",
                 {},
                 {"star(star(u,v);s,t) = star(s,t);star(u,v)"}),
        make_law("Atwisted", "s t u", {}, {"u;star(s,t) = star(u;s,u;t);u"}),
        make_law("AD", "s", {}, {"star(s,s) = D(s)"}),
        make_law("DT2A",
                 "s b:test e:dom",
                 {"D(s;b) <= e", "D(s;not(b)) <= e"},
                 {"D(s) <= e"}),

        // disagreeable
        make_law("in1", "s t", {}, {"D(neq(s,t)) = neq(s,t)"}),
        make_law("intwist", "s t u", {}, {"s;neq(t,u) = neq(s;t,s;u);s"}),
        make_law("ineq", "s t", {}, {"star(s,t);neq(s,t) = 0"}),
        make_law("innorm", "e:dom u v", {}, {"e;neq(u,v) = neq(e;u,e;v)"}),
        make_law("inimp",
                 "s t e:dom",
                 {"star(s,t) <= e", "neq(s,t) <= e"},
                 {"D(s);D(t) <= e"}),

        // weak comparison
        make_law("comp1", "s t u v", {}, {"D(wc(s,t,u,v)) <= D(s);D(t)"}),
        make_law("comp2",
                 "s t u v",
                 {},
                 {"star(s,t);wc(s,t,u,v) = star(s,t);u"}),
        make_law("comp3",
                 "s t u v",
                 {},
                 {"neq(s,t);wc(s,t,u,v) = neq(s,t);v"}),
        make_law("wc1", "s t u", {}, {"wc(s,t,u,u) = D(s);D(t);u"}),
        make_law("wc2",
                 "s t u v",
                 {},
                 {"wc(s,t,u,v) = wc(s,t,star(s,t);u,neq(s,t);v)"}),

        // extended while-do
        make_law("W12",
                 "t a:test s",
                 {},
                 {"while(t,a,s) = ite(t,a,s;while(t,a,s),1)"}),
        make_law("W1",
                 "t a:test s",
                 {},
                 {"D(t;a);while(t,a,s) = D(t;a);s;while(t,a,s)"}),
        make_law("W2",
                 "t a:test s",
                 {},
                 {"D(t;not(a));while(t,a,s) = D(t;not(a))"}),
        make_law("Kleenean-1",
                 "t a:test s",
                 {},
                 {"while(t,a,s);D(t;not(a)) = while(t,a,s)"}),
        make_law("Kleenean-2",
                 "t a:test s u",
                 {"D(t;a);s;u <= u"},
                 {"while(t,a,s);u <= u"}),

        // natural order
        make_law("order-reflexive", "s", {}, {"s <= s"}),
        make_law("order-antisymmetric",
                 "s t",
                 {"s <= t", "t <= s"},
                 {"s = t"}),
        make_law("order-transitive",
                 "s t u",
                 {"s <= t", "t <= u"},
                 {"s <= u"}),
        make_law("stable",
                 "s t u v",
                 {"s <= t", "u <= v"},
                 {"s;u <= t;v"}),
    };
    return all;
  }

  inline law const& find_law(std::string_view name) {
    for (auto const& l : registry()) {
      if (l.name == name) {
        return l;
      }
    }
    throw input_error("unknown law \"" + std::string(name) + "\"");
  }

  struct suite {
    std::string              name;
    std::vector<std::string> laws;
    op_set                   derived;  // always expanded, never read from tables
  };

  inline std::vector<suite> const& suites() {
    static std::vector<suite> const all = [] {
      std::vector<std::string> const mwt = {"assoc",
                                            "one-left",
                                            "one-right",
                                            "zero-left",
                                            "zero-right",
                                            "test-commute",
                                            "test-idempotent",
                                            "test-complement-zero",
                                            "test-involution",
                                            "join-commutative",
                                            "join-associative",
                                            "absorption-meet-join",
                                            "absorption-join-meet",
                                            "distributive",
                                            "complement-join-one"};
      std::vector<std::string> const rwt
          = {"D1", "Dleft", "Dcom", "DD", "Dtwisted", "DT1", "DT2"};
      std::vector<std::string> eite = rwt;
      for (auto const* n :
           {"EITE2", "EITE3", "EITE5", "EITE1", "EITE4", "EITEmul"}) {
        eite.emplace_back(n);
      }
      std::vector<std::string> const ta
          = {"A1", "Acom", "Aeq", "Anorm", "Atwisted", "AD", "DT1", "DT2A"};
      std::vector<std::string> dis = ta;
      for (auto const* n : {"in1", "intwist", "ineq", "innorm", "inimp"}) {
        dis.emplace_back(n);
      }
      std::vector<std::string> wc = dis;
      for (auto const* n : {"comp1", "comp2", "comp3", "wc1", "wc2"}) {
        wc.emplace_back(n);
      }
      std::vector<std::string> kw = eite;
      for (auto const* n : {"W12", "W1", "W2", "Kleenean-1", "Kleenean-2"}) {
        kw.emplace_back(n);
      }
      return std::vector<suite>{
          {"monoid-with-tests", mwt, {}},
          {"restriction-with-tests", rwt, {}},
          {"eite", eite, {}},
          {"twisted-agreeable", ta, {}},
          {"disagreeable", dis, {}},
          {"weak-comparison", wc, {op::star, op::neq}},
          {"kleenean-w", kw, {}},
          {"order",
           {"order-reflexive", "order-antisymmetric", "order-transitive",
            "stable"},
           {}},
      };
    }();
    return all;
  }

  inline suite const& find_suite(std::string_view name) {
    for (auto const& s : suites()) {
      if (s.name == name) {
        return s;
      }
    }
    throw input_error("unknown suite \"" + std::string(name) + "\"");
  }

  ////////////////////////////////////////////////////////////////////////
  // Checker
  ////////////////////////////////////////////////////////////////////////

  enum class check_mode { automatic, exhaustive, sampled };

  inline constexpr std::size_t default_samples = 1000000;

  struct check_options {
    check_mode    mode    = check_mode::automatic;
    std::size_t   samples = default_samples;
    std::uint64_t seed    = 0;
    unsigned      workers = 0;  // 0: hardware concurrency
  };

  struct law_result {
    std::string                                      law;
    bool                                             passed = true;
    std::vector<std::pair<std::string, std::size_t>> witness;
    check_mode                                       mode = check_mode::exhaustive;
    std::uint64_t                                    seed  = 0;
    std::uint64_t                                    count = 0;  // assignments examined
  };

  struct check_report {
    std::string             suite;
    std::vector<law_result> results;

    bool passed() const noexcept {
      return std::all_of(results.begin(),
                         results.end(),
                         [](law_result const& r) { return r.passed; });
    }
    law_result const* find(std::string_view name) const noexcept {
      for (auto const& r : results) {
        if (r.law == name) {
          return &r;
        }
      }
      return nullptr;
    }
  };

  // A law compiled against one context: premise and conclusion programs plus
  // the carrier positions each variable ranges over.
  template <typename Ctx>
  class compiled_law {
   public:
    using value_type = typename Ctx::value_type;

    compiled_law(law const& l, Ctx const& ctx, op_set derived = {})
        : _law(&l), _ctx(&ctx), _pre(l.vars), _post(l.vars) {
      op_set basis = ctx.ops();
      for (op o : derived.list()) {
        basis.erase(o);
      }
      for (auto const& e : l.premises) {
        _pre_roots.emplace_back(_pre.add(expand_derived(e.lhs, basis)),
                                _pre.add(expand_derived(e.rhs, basis)));
      }
      for (auto const& e : l.conclusions) {
        _post_roots.emplace_back(_post.add(expand_derived(e.lhs, basis)),
                                 _post.add(expand_derived(e.rhs, basis)));
      }
      require_ops(ctx, _pre.ops());
      require_ops(ctx, _post.ops());
      for (auto const& [name, s] : l.vars) {
        switch (s) {
          case sort::elem: {
            std::vector<std::size_t> all(ctx.size());
            for (std::size_t i = 0; i < all.size(); ++i) {
              all[i] = i;
            }
            _domains.push_back(std::move(all));
            break;
          }
          case sort::test:
            _domains.push_back(ctx.tests());
            break;
          case sort::domelem:
            _domains.push_back(ctx.domain_elements());
            break;
        }
      }
    }

    law const& source() const noexcept {
      return *_law;
    }
    std::vector<std::vector<std::size_t>> const& domains() const noexcept {
      return _domains;
    }

    // Size of the assignment space, saturating at uint64 max.
    std::uint64_t space() const noexcept {
      std::uint64_t total = 1;
      for (auto const& d : _domains) {
        if (d.empty()) {
          return 0;
        }
        if (total > std::numeric_limits<std::uint64_t>::max() / d.size()) {
          return std::numeric_limits<std::uint64_t>::max();
        }
        total *= d.size();
      }
      return total;
    }

    // Carrier positions for lexicographic assignment number i (first
    // variable most significant).
    void decode(std::uint64_t i, std::vector<std::size_t>& pos) const {
      pos.resize(_domains.size());
      for (std::size_t k = _domains.size(); k-- > 0;) {
        auto const r = _domains[k].size();
        pos[k]       = _domains[k][i % r];
        i /= r;
      }
    }

    // Carrier positions for sample i of the stream keyed by seed.
    void draw(std::uint64_t seed, std::uint64_t i, std::vector<std::size_t>& pos)
        const {
      pos.resize(_domains.size());
      for (std::size_t k = 0; k < _domains.size(); ++k) {
        auto const r = _domains[k].size();
        pos[k]       = _domains[k][detail::counter_draw(seed, k, i) % r];
      }
    }

    struct scratch {
      std::vector<value_type> pre, post;
    };

    // True when the assignment satisfies the law.
    bool holds(std::vector<std::size_t> const& pos, scratch& s) const {
      std::size_t const n = pos.size();
      if (!_pre_roots.empty()) {
        s.pre.resize(std::max(s.pre.size(), _pre.slots()));
        for (std::size_t k = 0; k < n; ++k) {
          s.pre[k] = _ctx->value(pos[k]);
        }
        _pre.run(*_ctx, s.pre);
        for (auto [l, r] : _pre_roots) {
          if (!(s.pre[l] == s.pre[r])) {
            return true;
          }
        }
      }
      s.post.resize(std::max(s.post.size(), _post.slots()));
      for (std::size_t k = 0; k < n; ++k) {
        s.post[k] = _ctx->value(pos[k]);
      }
      _post.run(*_ctx, s.post);
      for (auto [l, r] : _post_roots) {
        if (!(s.post[l] == s.post[r])) {
          return false;
        }
      }
      return true;
    }

   private:
    law const*                                         _law;
    Ctx const*                                         _ctx;
    program                                            _pre, _post;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> _pre_roots, _post_roots;
    std::vector<std::vector<std::size_t>>              _domains;
  };

  namespace detail {
    inline unsigned worker_count(unsigned requested) {
      if (requested != 0) {
        return requested;
      }
      unsigned hw = std::thread::hardware_concurrency();
      return hw == 0 ? 1 : hw;
    }

    // Least i in [0, n) with fails(i, scratch), or n. Blocks are handed out
    // in increasing order and scanning stops past the best failure found so
    // far, so the answer does not depend on scheduling.
    template <typename Scratch, typename Fails>
    std::uint64_t first_failure(std::uint64_t n, unsigned workers, Fails&& fails) {
      constexpr std::uint64_t    block = 2048;
      std::atomic<std::uint64_t> next{0};
      std::atomic<std::uint64_t> best{n};
      auto                       work = [&] {
        Scratch scratch;
        while (true) {
          std::uint64_t const start = next.fetch_add(1) * block;
          if (start >= n || start >= best.load()) {
            return;
          }
          std::uint64_t const stop = std::min(n, start + block);
          for (std::uint64_t i = start; i < stop; ++i) {
            if (i >= best.load(std::memory_order_relaxed)) {
              break;
            }
            if (fails(i, scratch)) {
              std::uint64_t cur = best.load();
              while (i < cur && !best.compare_exchange_weak(cur, i)) {
              }
              break;
            }
          }
        }
      };
      std::uint64_t const blocks = (n + block - 1) / block;
      workers = static_cast<unsigned>(
          std::min<std::uint64_t>(workers, std::max<std::uint64_t>(blocks, 1)));
      if (workers <= 1) {
        work();
      } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
          pool.emplace_back(work);
        }
        for (auto& t : pool) {
          t.join();
        }
      }
      return best.load();
    }
  }  // namespace detail

  template <typename Ctx>
  law_result check_law(Ctx const&           ctx,
                       law const&           l,
                       check_options const& opt,
                       op_set               derived = {}) {
    compiled_law<Ctx> const cl(l, ctx, derived);
    std::uint64_t const     space = cl.space();
    law_result              res;
    res.law = l.name;
    bool sample
        = opt.mode == check_mode::sampled
          || (opt.mode == check_mode::automatic && space > opt.samples);
    res.mode = sample ? check_mode::sampled : check_mode::exhaustive;
    res.seed = sample ? opt.seed : 0;
    std::uint64_t const n = sample ? opt.samples : space;
    using scratch         = typename compiled_law<Ctx>::scratch;
    struct state {
      scratch                  s;
      std::vector<std::size_t> pos;
    };
    auto assign = [&](std::uint64_t i, std::vector<std::size_t>& pos) {
      if (sample) {
        cl.draw(opt.seed, i, pos);
      } else {
        cl.decode(i, pos);
      }
    };
    std::uint64_t const fail = detail::first_failure<state>(
        n, detail::worker_count(opt.workers), [&](std::uint64_t i, state& st) {
          assign(i, st.pos);
          return !cl.holds(st.pos, st.s);
        });
    if (fail < n) {
      res.passed = false;
      res.count  = fail + 1;
      std::vector<std::size_t> pos;
      assign(fail, pos);
      for (std::size_t k = 0; k < pos.size(); ++k) {
        res.witness.emplace_back(l.vars[k].first, pos[k]);
      }
    } else {
      res.count = n;
    }
    return res;
  }

  template <typename Ctx>
  check_report check(Ctx const& ctx, suite const& s, check_options const& opt = {}) {
    check_report rep;
    rep.suite = s.name;
    for (auto const& name : s.laws) {
      rep.results.push_back(check_law(ctx, find_law(name), opt, s.derived));
    }
    return rep;
  }

  template <typename Ctx>
  check_report check(Ctx const&           ctx,
                     std::string_view     suite_name,
                     check_options const& opt = {}) {
    return check(ctx, find_suite(suite_name), opt);
  }

  // True when every law in `names` holds, or nullopt when ctx cannot supply
  // the operations they need.
  template <typename Ctx>
  std::optional<bool> laws_hold(Ctx const&                      ctx,
                                std::vector<std::string> const& names,
                                check_options const&            opt,
                                op_set                          derived = {}) {
    try {
      for (auto const& n : names) {
        if (!check_law(ctx, find_law(n), opt, derived).passed) {
          return false;
        }
      }
      return true;
    } catch (capability_error const&) {
      return std::nullopt;
    }
  }

  struct equivalence_result {
    std::string         name;     // e.g. "DT2 <=> EITE1+EITE4"
    bool                applicable = false;
    std::string         note;     // reason when not applicable
    std::optional<bool> lhs, rhs;

    bool agrees() const noexcept {
      return !applicable || lhs == rhs;
    }
  };

  // The three equivalences between a quasi-equation and its replacement:
  //   DT2 <=> EITE1 + EITE4     given the eite base laws
  //   DT2 <=> DT2A              given the twisted agreeable laws
  //   inimp <=> wc1 + wc2       given the weak-comparison base laws,
  //                             with * and ≠ read through wc
  template <typename Ctx>
  std::vector<equivalence_result> check_equivalences(
      Ctx const&           ctx,
      check_options const& opt = {}) {
    std::vector<equivalence_result> out;
    auto run = [&](std::string                     name,
                   std::vector<std::string> const& base,
                   std::vector<std::string> const& left,
                   std::vector<std::string> const& right,
                   op_set                          derived) {
      equivalence_result r;
      r.name         = std::move(name);
      auto base_true = laws_hold(ctx, base, opt, derived);
      if (!base_true) {
        r.note = "missing operations";
      } else if (!*base_true) {
        r.note = "base laws fail";
      } else {
        r.lhs = laws_hold(ctx, left, opt, derived);
        r.rhs = laws_hold(ctx, right, opt, derived);
        if (r.lhs && r.rhs) {
          r.applicable = true;
        } else {
          r.note = "missing operations";
        }
      }
      out.push_back(std::move(r));
    };
    run("DT2 <=> EITE1+EITE4",
        {"D1", "Dleft", "Dcom", "DD", "Dtwisted", "DT1", "EITE2", "EITE3",
         "EITE5"},
        {"DT2"},
        {"EITE1", "EITE4"},
        {});
    run("DT2 <=> DT2A",
        {"A1", "Acom", "Aeq", "Anorm", "Atwisted", "AD", "DT1"},
        {"DT2"},
        {"DT2A"},
        {});
    run("inimp <=> wc1+wc2",
        {"A1", "Acom", "Aeq", "Anorm", "Atwisted", "AD", "DT1", "in1",
         "intwist", "ineq", "innorm", "comp1", "comp2", "comp3"},
        {"inimp"},
        {"wc1", "wc2"},
        {op::star, op::neq});
    return out;
  }

  struct agreenor_violation {
    std::size_t x, y;
  };

  // x*y is the largest e in D(S) with e <= D(x)D(y) and ex = ey. Needs D
  // and star; returns pairs where the largest such e is missing or differs.
  template <typename Ctx>
  std::vector<agreenor_violation> check_agreenor(Ctx const& ctx) {
    require_ops(ctx, {op::dom, op::star});
    using V = typename Ctx::value_type;
    auto leq = [&](V const& a, V const& b) {
      return ctx.mult(ctx.dom(a), b) == a;
    };
    std::vector<agreenor_violation> bad;
    auto const&                     des = ctx.domain_elements();
    for (std::size_t x = 0; x < ctx.size(); ++x) {
      for (std::size_t y = 0; y < ctx.size(); ++y) {
        V const&         vx = ctx.value(x);
        V const&         vy = ctx.value(y);
        V const          dd = ctx.mult(ctx.dom(vx), ctx.dom(vy));
        std::vector<V>   cands;
        for (std::size_t e : des) {
          V const& ve = ctx.value(e);
          if (leq(ve, dd) && ctx.mult(ve, vx) == ctx.mult(ve, vy)) {
            cands.push_back(ve);
          }
        }
        std::optional<V> top;
        for (auto const& c : cands) {
          if (std::all_of(cands.begin(), cands.end(), [&](V const& o) {
                return leq(o, c);
              })) {
            top = c;
            break;
          }
        }
        if (!top || !(*top == ctx.star(vx, vy))) {
          bad.push_back({x, y});
        }
      }
    }
    return bad;
  }

}  // namespace nhp
