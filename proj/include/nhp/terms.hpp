#pragma once

// Terms over the signature, their concrete syntax, sort checking, compiled
// evaluation over any context, and rewriting into a smaller basis.
//
//   term := atom (";" atom)*
//   atom := "0" | "1" | ident | "(" term ")"
//         | "D(" t ")" | "not(" t ")" | "P(" t ")"
//         | "star(" t "," t ")" | "neq(" t "," t ")"
//         | "bowtie(" t "," t ")" | "cup(" t "," t ")"
//         | "ite(" t "," t "," t "," t ")" | "wc(" t "," t "," t "," t ")"
//         | "while(" t "," t "," t ")"

#include <cctype>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "error.hpp"
#include "model.hpp"
#include "ops.hpp"

namespace nhp {

  enum class sort { elem, test, domelem };

  inline std::string_view sort_name(sort s) noexcept {
    switch (s) {
      case sort::elem:
        return "elem";
      case sort::test:
        return "test";
      case sort::domelem:
        return "domelem";
    }
    return "?";
  }

  enum class node_kind {
    zero,
    one,
    var,
    compose,
    dom,
    star,
    neq,
    eite,
    wc,
    whl,
    complement,
    antidom,
    bowtie,
    cup
  };

  struct node;
  using term = std::shared_ptr<node const>;

  struct node {
    node_kind         kind;
    std::string       name;  // variables only
    sort              var_sort = sort::elem;
    std::vector<term> args;
  };

  using sort_env = std::map<std::string, sort, std::less<>>;

  namespace detail {
    struct kind_info {
      node_kind        kind;
      std::string_view keyword;
      std::size_t      arity;
      int              test_arg;  // index of the test-sorted argument, or -1
    };

    inline constexpr kind_info kinds[] = {
        {node_kind::dom, "D", 1, -1},
        {node_kind::complement, "not", 1, 0},
        {node_kind::antidom, "P", 1, -1},
        {node_kind::star, "star", 2, -1},
        {node_kind::neq, "neq", 2, -1},
        {node_kind::bowtie, "bowtie", 2, -1},
        {node_kind::cup, "cup", 2, -1},
        {node_kind::eite, "ite", 4, 1},
        {node_kind::wc, "wc", 4, -1},
        {node_kind::whl, "while", 3, 1},
    };

    inline kind_info const* info_of(node_kind k) noexcept {
      for (auto const& i : kinds) {
        if (i.kind == k) {
          return &i;
        }
      }
      return nullptr;
    }

    inline kind_info const* info_of(std::string_view keyword) noexcept {
      for (auto const& i : kinds) {
        if (i.keyword == keyword) {
          return &i;
        }
      }
      return nullptr;
    }
  }  // namespace detail

  inline term make_var(std::string name, sort s = sort::elem) {
    return std::make_shared<node const>(
        node{node_kind::var, std::move(name), s, {}});
  }

  inline term make_term(node_kind k, std::vector<term> args = {}) {
    return std::make_shared<node const>(node{k, {}, sort::elem, std::move(args)});
  }

  inline term zero_term() {
    return make_term(node_kind::zero);
  }
  inline term one_term() {
    return make_term(node_kind::one);
  }

  // The operation a node needs from a context, if any.
  inline std::optional<op> required_op(node_kind k) noexcept {
    switch (k) {
      case node_kind::dom:
        return op::dom;
      case node_kind::star:
        return op::star;
      case node_kind::neq:
        return op::neq;
      case node_kind::eite:
        return op::eite;
      case node_kind::wc:
        return op::wc;
      case node_kind::whl:
        return op::whl;
      case node_kind::antidom:
        return op::antidom;
      case node_kind::bowtie:
        return op::bowtie;
      case node_kind::cup:
        return op::cup;
      default:
        return std::nullopt;
    }
  }

  inline void collect_ops(term const& t, op_set& out) {
    if (auto o = required_op(t->kind)) {
      out.insert(*o);
    }
    for (auto const& a : t->args) {
      collect_ops(a, out);
    }
  }

  inline op_set ops_used(term const& t) {
    op_set out;
    collect_ops(t, out);
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Printing
  ////////////////////////////////////////////////////////////////////////

  inline void print_to(term const& t, std::string& out) {
    switch (t->kind) {
      case node_kind::zero:
        out += '0';
        return;
      case node_kind::one:
        out += '1';
        return;
      case node_kind::var:
        out += t->name;
        return;
      case node_kind::compose: {
        print_to(t->args[0], out);
        out += ';';
        bool paren = t->args[1]->kind == node_kind::compose;
        if (paren) {
          out += '(';
        }
        print_to(t->args[1], out);
        if (paren) {
          out += ')';
        }
        return;
      }
      default: {
        out += detail::info_of(t->kind)->keyword;
        out += '(';
        for (std::size_t i = 0; i < t->args.size(); ++i) {
          if (i) {
            out += ',';
          }
          print_to(t->args[i], out);
        }
        out += ')';
      }
    }
  }

  inline std::string print(term const& t) {
    std::string out;
    print_to(t, out);
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Parsing and sort checking
  ////////////////////////////////////////////////////////////////////////

  // Test-sorted terms: 0, 1, test variables, and closures under not and ;.
  inline bool is_test_term(term const& t) noexcept {
    switch (t->kind) {
      case node_kind::zero:
      case node_kind::one:
      case node_kind::complement:
        return true;
      case node_kind::var:
        return t->var_sort == sort::test;
      case node_kind::compose:
        return is_test_term(t->args[0]) && is_test_term(t->args[1]);
      default:
        return false;
    }
  }

  inline void sort_check(term const& t) {
    if (auto const* info = detail::info_of(t->kind)) {
      if (info->test_arg >= 0) {
        term const& a = t->args[static_cast<std::size_t>(info->test_arg)];
        if (!is_test_term(a)) {
          throw sort_error("test-sorted position holds a non-test term",
                           print(a));
        }
      }
    }
    for (auto const& a : t->args) {
      sort_check(a);
    }
  }

  namespace detail {
    class parser {
     public:
      parser(std::string_view text, sort_env const& env)
          : _text(text), _env(env) {}

      term parse_all() {
        term t = parse_term();
        skip_ws();
        if (_pos != _text.size()) {
          throw parse_error("unexpected '" + std::string(1, _text[_pos])
                                + "'",
                            _pos);
        }
        return t;
      }

     private:
      void skip_ws() {
        while (_pos < _text.size()
               && std::isspace(static_cast<unsigned char>(_text[_pos]))) {
          ++_pos;
        }
      }

      bool accept(char c) {
        skip_ws();
        if (_pos < _text.size() && _text[_pos] == c) {
          ++_pos;
          return true;
        }
        return false;
      }

      void expect(char c) {
        if (!accept(c)) {
          throw parse_error(std::string("expected '") + c + "'", _pos);
        }
      }

      term parse_term() {
        term t = parse_atom();
        while (accept(';')) {
          // parse first: a throw inside the braced list leaks on older gcc
          term rhs = parse_atom();
          t        = make_term(node_kind::compose, {t, std::move(rhs)});
        }
        return t;
      }

      static bool ident_start(char c) {
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
      }
      static bool ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_'
               || c == '\'';
      }

      term parse_atom() {
        skip_ws();
        if (_pos >= _text.size()) {
          throw parse_error("unexpected end of input", _pos);
        }
        char c = _text[_pos];
        if (c == '0' || c == '1') {
          ++_pos;
          if (_pos < _text.size() && ident_char(_text[_pos])) {
            throw parse_error("malformed constant", _pos - 1);
          }
          return c == '0' ? zero_term() : one_term();
        }
        if (c == '(') {
          ++_pos;
          term t = parse_term();
          expect(')');
          return t;
        }
        if (!ident_start(c)) {
          throw parse_error("unexpected '" + std::string(1, c) + "'", _pos);
        }
        std::size_t const start = _pos;
        while (_pos < _text.size() && ident_char(_text[_pos])) {
          ++_pos;
        }
        std::string_view word = _text.substr(start, _pos - start);
        skip_ws();
        if (_pos < _text.size() && _text[_pos] == '(') {
          auto const* info = info_of(word);
          if (info == nullptr) {
            throw parse_error("unknown operation '" + std::string(word) + "'",
                              start);
          }
          ++_pos;
          std::vector<term> args;
          for (std::size_t i = 0; i < info->arity; ++i) {
            if (i) {
              expect(',');
            }
            args.push_back(parse_term());
          }
          expect(')');
          return make_term(info->kind, std::move(args));
        }
        auto it = _env.find(word);
        return make_var(std::string(word),
                        it == _env.end() ? sort::elem : it->second);
      }

      std::string_view _text;
      sort_env const&  _env;
      std::size_t      _pos = 0;
    };
  }  // namespace detail

  // Identifiers not in `env` are element-sorted.
  inline term parse(std::string_view text, sort_env const& env = {}) {
    term t = detail::parser(text, env).parse_all();
    sort_check(t);
    return t;
  }

  inline void collect_vars(term const&                               t,
                           std::vector<std::pair<std::string, sort>>& out) {
    if (t->kind == node_kind::var) {
      for (auto const& [n, s] : out) {
        if (n == t->name) {
          return;
        }
      }
      out.emplace_back(t->name, t->var_sort);
    }
    for (auto const& a : t->args) {
      collect_vars(a, out);
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // Derived operations
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    inline term D(term s) {
      return make_term(node_kind::dom, {std::move(s)});
    }
    inline term seq(term a, term b) {
      return make_term(node_kind::compose, {std::move(a), std::move(b)});
    }
    inline term neg(term a) {
      return make_term(node_kind::complement, {std::move(a)});
    }
    inline bool dom_derivable(op_set b) {
      return b.contains(op::dom) || b.contains(op::eite) || b.contains(op::wc)
             || b.contains(op::star);
    }
  }  // namespace detail

  // Rewrites t so that it mentions only operations in `basis`:
  //   D(s)        -> ite(s,1,1,1) | wc(s,s,1,0) | star(s,s)
  //   star(s,t)   -> wc(s,t,1,0)  | bowtie(s,t);D(s);D(t)
  //   neq(s,t)    -> wc(s,t,0,1)  | not(bowtie(s,t));D(s);D(t)
  //   P(s)        -> not(D(s))
  //   ite(s,a,t,u)-> cup(D(s;a);t, D(s;not(a));u)
  //   wc(s,t,u,v) -> cup(star(s,t);u, neq(s,t);v)
  //   cup(s,t)    -> ite(1,D(s),s,t)
  inline term expand_derived(term const& t, op_set basis) {
    using detail::D;
    using detail::neg;
    using detail::seq;
    std::vector<term> args;
    bool              changed = false;
    for (auto const& a : t->args) {
      args.push_back(expand_derived(a, basis));
      changed = changed || args.back() != a;
    }
    auto const need = required_op(t->kind);
    if (!need || basis.contains(*need)) {
      if (!changed) {
        return t;
      }
      auto n  = std::make_shared<node>(*t);
      n->args = std::move(args);
      return n;
    }
    auto fail = [&]() -> term {
      throw capability_error("cannot derive " + std::string(op_name(*need))
                             + " from {" + to_string(basis) + "}");
    };
    auto again = [&](term r) {
      return expand_derived(r, basis);
    };
    term const one  = one_term();
    term const zero = zero_term();
    switch (t->kind) {
      case node_kind::dom: {
        term const& s = args[0];
        if (basis.contains(op::eite)) {
          return make_term(node_kind::eite, {s, one, one, one});
        }
        if (basis.contains(op::wc)) {
          return make_term(node_kind::wc, {s, s, one, zero});
        }
        if (basis.contains(op::star)) {
          return make_term(node_kind::star, {s, s});
        }
        return fail();
      }
      case node_kind::star: {
        if (basis.contains(op::wc)) {
          return make_term(node_kind::wc, {args[0], args[1], one, zero});
        }
        if (basis.contains(op::bowtie)
            && (basis.contains(op::dom) || basis.contains(op::eite))) {
          return again(seq(seq(make_term(node_kind::bowtie, args), D(args[0])),
                           D(args[1])));
        }
        return fail();
      }
      case node_kind::neq: {
        if (basis.contains(op::wc)) {
          return make_term(node_kind::wc, {args[0], args[1], zero, one});
        }
        // (s⋈t)' alone also holds where exactly one side is defined
        if (basis.contains(op::bowtie) && detail::dom_derivable(basis)) {
          return again(seq(seq(neg(make_term(node_kind::bowtie, args)),
                               D(args[0])),
                           D(args[1])));
        }
        return fail();
      }
      case node_kind::antidom: {
        if (detail::dom_derivable(basis)) {
          return again(neg(D(args[0])));
        }
        return fail();
      }
      case node_kind::eite: {
        if (basis.contains(op::cup) && detail::dom_derivable(basis)) {
          term const &s = args[0], &a = args[1];
          return again(make_term(
              node_kind::cup,
              {seq(D(seq(s, a)), args[2]), seq(D(seq(s, neg(a))), args[3])}));
        }
        return fail();
      }
      case node_kind::wc: {
        if (basis.contains(op::cup)
            && (basis.contains(op::star) || basis.contains(op::bowtie))
            && (basis.contains(op::neq) || basis.contains(op::bowtie))) {
          term const &s = args[0], &u = args[1];
          return again(make_term(
              node_kind::cup,
              {seq(make_term(node_kind::star, {s, u}), args[2]),
               seq(make_term(node_kind::neq, {s, u}), args[3])}));
        }
        return fail();
      }
      case node_kind::cup: {
        if (basis.contains(op::eite) && detail::dom_derivable(basis)) {
          return again(make_term(node_kind::eite,
                                 {one, D(args[0]), args[0], args[1]}));
        }
        return fail();
      }
      default:
        return fail();
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // Compiled evaluation
  ////////////////////////////////////////////////////////////////////////

  struct instr {
    node_kind     kind;
    std::uint32_t a = 0, b = 0, c = 0, d = 0;  // argument slots or var index
  };

  // Straight-line code over slots with common subterms shared. Variables
  // occupy the first slots in declaration order.
  class program {
   public:
    program() = default;
    explicit program(std::vector<std::pair<std::string, sort>> vars)
        : _vars(std::move(vars)) {
      for (std::size_t i = 0; i < _vars.size(); ++i) {
        _memo.emplace(_vars[i].first, static_cast<std::uint32_t>(i));
      }
    }

    // Returns the slot holding the value of t.
    std::uint32_t add(term const& t) {
      std::string key = print(t);
      if (auto it = _memo.find(key); it != _memo.end()) {
        return it->second;
      }
      if (t->kind == node_kind::var) {
        throw input_error("unbound variable " + t->name);
      }
      std::uint32_t slots[4] = {0, 0, 0, 0};
      for (std::size_t i = 0; i < t->args.size(); ++i) {
        slots[i] = add(t->args[i]);
      }
      auto const slot = static_cast<std::uint32_t>(_vars.size() + _code.size());
      _code.push_back({t->kind, slots[0], slots[1], slots[2], slots[3]});
      _memo.emplace(std::move(key), slot);
      collect_ops(t, _ops);
      return slot;
    }

    std::vector<std::pair<std::string, sort>> const& vars() const noexcept {
      return _vars;
    }
    std::size_t slots() const noexcept {
      return _vars.size() + _code.size();
    }
    op_set ops() const noexcept {
      return _ops;
    }

    // Fills `slots` (resized as needed); variables must already be in place
    // in the first vars().size() entries.
    template <typename Ctx>
    void run(Ctx const& ctx, std::vector<typename Ctx::value_type>& s) const {
      std::size_t const base = _vars.size();
      if (s.size() < slots()) {
        s.resize(slots());
      }
      for (std::size_t i = 0; i < _code.size(); ++i) {
        instr const& in  = _code[i];
        auto&        out = s[base + i];
        switch (in.kind) {
          case node_kind::zero:
            out = ctx.zero();
            break;
          case node_kind::one:
            out = ctx.one();
            break;
          case node_kind::var:
            break;
          case node_kind::compose:
            out = ctx.mult(s[in.a], s[in.b]);
            break;
          case node_kind::dom:
            out = ctx.dom(s[in.a]);
            break;
          case node_kind::star:
            out = ctx.star(s[in.a], s[in.b]);
            break;
          case node_kind::neq:
            out = ctx.neq(s[in.a], s[in.b]);
            break;
          case node_kind::eite:
            out = ctx.eite(s[in.a], s[in.b], s[in.c], s[in.d]);
            break;
          case node_kind::wc:
            out = ctx.wc(s[in.a], s[in.b], s[in.c], s[in.d]);
            break;
          case node_kind::whl:
            out = ctx.whl(s[in.a], s[in.b], s[in.c]);
            break;
          case node_kind::complement:
            out = ctx.complement(s[in.a]);
            break;
          case node_kind::antidom:
            out = ctx.antidom(s[in.a]);
            break;
          case node_kind::bowtie:
            out = ctx.bowtie(s[in.a], s[in.b]);
            break;
          case node_kind::cup:
            out = ctx.cup(s[in.a], s[in.b]);
            break;
        }
      }
    }

   private:
    std::vector<std::pair<std::string, sort>>      _vars;
    std::vector<instr>                             _code;
    std::unordered_map<std::string, std::uint32_t> _memo;
    op_set                                         _ops;
  };

  template <typename Ctx>
  void require_ops(Ctx const& ctx, op_set needed) {
    for (op o : needed.list()) {
      if (!ctx.has(o)) {
        throw capability_error("context lacks operation "
                               + std::string(op_name(o)));
      }
    }
  }

  // Evaluates t under an assignment of variables to carrier positions.
  // Operations missing from ctx are expanded through expand_derived.
  template <typename Ctx>
  typename Ctx::value_type eval(
      term const&                                          t,
      std::map<std::string, std::size_t, std::less<>> const& sigma,
      Ctx const&                                           ctx) {
    term const e = expand_derived(t, ctx.ops());
    std::vector<std::pair<std::string, sort>> vars;
    collect_vars(e, vars);
    std::vector<typename Ctx::value_type> slots;
    for (auto const& [name, s] : vars) {
      auto it = sigma.find(name);
      if (it == sigma.end()) {
        throw input_error("no binding for variable " + name);
      }
      if (it->second >= ctx.size()) {
        throw input_error("binding for " + name + " out of range");
      }
      slots.push_back(ctx.value(it->second));
    }
    program p(vars);
    std::uint32_t root = p.add(e);
    require_ops(ctx, p.ops());
    p.run(ctx, slots);
    return slots[root];
  }

}  // namespace nhp
