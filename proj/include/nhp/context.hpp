#pragma once

// Uniform evaluation interface over abstract table algebras and over
// collections of concrete partial maps. Both contexts expose:
//
//   value_type, one(), zero(), mult, dom, complement, star, neq, eite, wc,
//   whl, antidom, bowtie, cup, has(op), size(), value(i), index_of(v),
//   tests(), domain_elements(), name(i)
//
// Carrier positions 0..size()-1 name the elements that variables range over.

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "error.hpp"
#include "ops.hpp"
#include "pfun.hpp"

namespace nhp {

  inline constexpr std::size_t npos = finite_algebra::npos;

  // Reads operations from the tables of a finite algebra. Keeps a reference;
  // the algebra must outlive the context.
  class table_context {
   public:
    using value_type = elem;

    explicit table_context(finite_algebra const& A)
        : _A(&A), _pos(A.test_positions()) {
      check_dimensions(A);
      _ops = A.capabilities();
      for (elem t : A.tests) {
        _tests.push_back(t);
      }
      _domain = derive_domain_elements();
      if (A.has_domain()) {
        bool dom_is_tests = true;
        for (elem a = 0; a < A.size; ++a) {
          dom_is_tests = dom_is_tests && _pos[A.dom(a)] != npos;
        }
        if (dom_is_tests) {
          _ops.insert(op::antidom);
          if (_ops.contains(op::star)) {
            _ops.insert(op::bowtie);
          }
          if (_ops.contains(op::eite)) {
            _ops.insert(op::cup);
          }
        }
      }
    }

    finite_algebra const& algebra() const noexcept {
      return *_A;
    }

    bool has(op o) const noexcept {
      return _ops.contains(o);
    }
    op_set ops() const noexcept {
      return _ops;
    }

    std::size_t size() const noexcept {
      return _A->size;
    }
    elem value(std::size_t i) const noexcept {
      return static_cast<elem>(i);
    }
    std::size_t index_of(elem v) const noexcept {
      return v < _A->size ? v : npos;
    }
    std::string name(std::size_t i) const {
      return _A->name(static_cast<elem>(i));
    }
    std::vector<std::size_t> const& tests() const noexcept {
      return _tests;
    }
    std::vector<std::size_t> const& domain_elements() const noexcept {
      return _domain;
    }
    bool is_test(elem a) const noexcept {
      return _pos[a] != npos;
    }

    elem one() const noexcept {
      return _A->one;
    }
    elem zero() const noexcept {
      return _A->zero;
    }
    elem mult(elem a, elem b) const noexcept {
      return _A->mul(a, b);
    }
    elem dom(elem a) const {
      require(op::dom);
      return _A->dom(a);
    }
    elem complement(elem a) const {
      return _A->complement[test_pos(a)];
    }
    elem star(elem a, elem b) const {
      require(op::star);
      return _A->star_at(a, b);
    }
    elem neq(elem a, elem b) const {
      require(op::neq);
      return _A->neq_at(a, b);
    }
    elem eite(elem s, elem a, elem t, elem u) const {
      require(op::eite);
      return _A->eite_at(s, test_pos(a), t, u);
    }
    elem wc(elem s, elem t, elem u, elem v) const {
      require(op::wc);
      return _A->wc_at(s, t, u, v);
    }
    elem whl(elem t, elem a, elem s) const {
      require(op::whl);
      return _A->whl_at(t, test_pos(a), s);
    }
    elem antidom(elem a) const {
      require(op::antidom);
      return complement(_A->dom(a));
    }
    // (s*t) ∨ P(s)P(t), with ∨ the derived Boolean join
    elem bowtie(elem a, elem b) const {
      require(op::bowtie);
      elem const x = _A->star_at(a, b);
      elem const y = mult(antidom(a), antidom(b));
      return complement(mult(complement(x), complement(y)));
    }
    elem cup(elem a, elem b) const {
      require(op::cup);
      return _A->eite_at(_A->one, test_pos(_A->dom(a)), a, b);
    }

   private:
    void require(op o) const {
      if (!_ops.contains(o)) {
        throw capability_error("algebra lacks operation "
                               + std::string(op_name(o)));
      }
    }

    std::size_t test_pos(elem a) const {
      std::size_t p = _pos[a];
      if (p == npos) {
        throw invariant_error("element " + _A->name(a)
                              + " used as a test but is not one");
      }
      return p;
    }

    // D(S) read off whichever operation can express D.
    std::vector<std::size_t> derive_domain_elements() const {
      finite_algebra const&    A = *_A;
      std::vector<std::size_t> out;
      std::size_t              one_pos = _pos[A.one];
      for (elem x = 0; x < A.size; ++x) {
        bool in;
        if (A.has_domain()) {
          in = A.dom(x) == x;
        } else if (!A.star.empty()) {
          in = A.star_at(x, x) == x;
        } else if (!A.eite.empty() && one_pos != npos) {
          in = A.eite_at(x, one_pos, A.one, A.one) == x;
        } else if (!A.wc.empty()) {
          in = A.wc_at(x, x, A.one, A.zero) == x;
        } else {
          in = _pos[x] != npos;
        }
        if (in) {
          out.push_back(x);
        }
      }
      return out;
    }

    finite_algebra const*    _A;
    std::vector<std::size_t> _pos;
    std::vector<std::size_t> _tests;
    std::vector<std::size_t> _domain;
    op_set                   _ops;
  };

  // Computes every operation by its semantic definition on partial maps.
  // Variables range over the carrier; results need not lie in it.
  class map_context {
   public:
    using value_type = partial_map;

    map_context(std::size_t              points,
                std::vector<partial_map> carrier,
                std::vector<std::size_t> test_positions,
                std::vector<std::string> names = {})
        : _points(points),
          _carrier(std::move(carrier)),
          _tests(std::move(test_positions)),
          _names(std::move(names)) {
      for (std::size_t i = 0; i < _carrier.size(); ++i) {
        detail::require_same_space(_points, _carrier[i].size());
        _index.try_emplace(_carrier[i], i);
        if (_carrier[i].is_restricted_identity()) {
          _domain.push_back(i);
        }
      }
      for (std::size_t t : _tests) {
        if (t >= _carrier.size() || !_carrier[t].is_restricted_identity()) {
          throw input_error("test position does not hold a test");
        }
      }
      for (op o : all_ops) {
        _ops.insert(o);
      }
    }

    static map_context from_closure(model_closure const& mc) {
      std::vector<std::size_t> tests(mc.algebra.tests.begin(),
                                     mc.algebra.tests.end());
      return map_context(mc.points, mc.elements, tests, mc.algebra.names);
    }

    // All maps, with every restriction of the identity as a test.
    static map_context from_full(full_model_result const& fm) {
      std::vector<std::size_t> tests;
      for (std::size_t i = 0; i < fm.maps.size(); ++i) {
        if (fm.maps[i].is_restricted_identity()) {
          tests.push_back(i);
        }
      }
      return map_context(fm.points, fm.maps, tests);
    }

    // Restricts the operations visible to terms, e.g. to exercise
    // derived-operation expansion.
    void restrict_ops(op_set ops) {
      _ops = ops;
    }

    bool has(op o) const noexcept {
      return _ops.contains(o);
    }
    op_set ops() const noexcept {
      return _ops;
    }

    std::size_t points() const noexcept {
      return _points;
    }
    std::size_t size() const noexcept {
      return _carrier.size();
    }
    partial_map const& value(std::size_t i) const noexcept {
      return _carrier[i];
    }
    std::vector<partial_map> const& carrier() const noexcept {
      return _carrier;
    }
    std::size_t index_of(partial_map const& v) const {
      auto it = _index.find(v);
      return it == _index.end() ? npos : it->second;
    }
    std::string name(std::size_t i) const {
      if (i < _names.size() && !_names[i].empty()) {
        return _names[i];
      }
      return std::to_string(i);
    }
    std::vector<std::size_t> const& tests() const noexcept {
      return _tests;
    }
    std::vector<std::size_t> const& domain_elements() const noexcept {
      return _domain;
    }

    partial_map one() const {
      return partial_map::identity(_points);
    }
    partial_map zero() const {
      return partial_map::null(_points);
    }
    partial_map mult(partial_map const& a, partial_map const& b) const {
      return compose(a, b);
    }
    partial_map dom(partial_map const& a) const {
      return domain_of(a).as_map();
    }
    partial_map complement(partial_map const& a) const {
      return test_complement(test_set::from_map(a)).as_map();
    }
    partial_map star(partial_map const& a, partial_map const& b) const {
      return agree_star(a, b).as_map();
    }
    partial_map neq(partial_map const& a, partial_map const& b) const {
      return disagree(a, b).as_map();
    }
    partial_map eite(partial_map const& s,
                     partial_map const& a,
                     partial_map const& t,
                     partial_map const& u) const {
      return detail::ext_ite(s, a, t, u);
    }
    partial_map wc(partial_map const& s,
                   partial_map const& t,
                   partial_map const& u,
                   partial_map const& v) const {
      return weak_cmp(s, t, u, v);
    }
    partial_map whl(partial_map const& t,
                    partial_map const& a,
                    partial_map const& s) const {
      return detail::ext_while(t, a, s);
    }
    partial_map antidom(partial_map const& a) const {
      return antidomain_P(a).as_map();
    }
    partial_map bowtie(partial_map const& a, partial_map const& b) const {
      return nhp::bowtie(a, b).as_map();
    }
    partial_map cup(partial_map const& a, partial_map const& b) const {
      return pref_union(a, b);
    }

   private:
    std::size_t                                                   _points;
    std::vector<partial_map>                                      _carrier;
    std::vector<std::size_t>                                      _tests;
    std::vector<std::string>                                      _names;
    std::vector<std::size_t>                                      _domain;
    std::unordered_map<partial_map, std::size_t, partial_map_hash> _index;
    op_set                                                        _ops;
  };

}  // namespace nhp
