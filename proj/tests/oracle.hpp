#pragma once

// Reference semantics for tests: partial maps as graphs (sets of pairs),
// with every operation written as unions and joins of graphs rather than
// pointwise case analysis.

#include <map>
#include <set>
#include <utility>
#include <vector>

#include <nhp/pfun.hpp>

namespace oracle {

  using graph = std::map<nhp::point, nhp::point>;

  inline graph of(nhp::partial_map const& f) {
    graph g;
    for (nhp::point x = 0; x < f.size(); ++x) {
      if (f.defined(x)) {
        g[x] = f(x);
      }
    }
    return g;
  }

  inline nhp::partial_map to_map(graph const& g, std::size_t n) {
    std::vector<nhp::point> img(n, nhp::undefined);
    for (auto [x, y] : g) {
      img[x] = y;
    }
    return nhp::partial_map(img);
  }

  inline graph ident(std::set<nhp::point> const& s) {
    graph g;
    for (auto x : s) {
      g[x] = x;
    }
    return g;
  }

  inline std::set<nhp::point> dom(graph const& g) {
    std::set<nhp::point> s;
    for (auto [x, y] : g) {
      s.insert(x);
    }
    return s;
  }

  inline graph join(graph const& f, graph const& g) {
    graph out;
    for (auto [x, y] : f) {
      if (auto it = g.find(y); it != g.end()) {
        out[x] = it->second;
      }
    }
    return out;
  }

  // Union of graphs with disjoint domains.
  inline graph unite(graph a, graph const& b) {
    for (auto [x, y] : b) {
      a[x] = y;
    }
    return a;
  }

  inline std::set<nhp::point> complement(std::set<nhp::point> const& s,
                                         std::size_t                 n) {
    std::set<nhp::point> out;
    for (nhp::point x = 0; x < n; ++x) {
      if (!s.count(x)) {
        out.insert(x);
      }
    }
    return out;
  }

  inline std::set<nhp::point> agree(graph const& f, graph const& g) {
    std::set<nhp::point> s;
    for (auto [x, y] : f) {
      if (auto it = g.find(x); it != g.end() && it->second == y) {
        s.insert(x);
      }
    }
    return s;
  }

  inline std::set<nhp::point> differ(graph const& f, graph const& g) {
    std::set<nhp::point> s;
    for (auto [x, y] : f) {
      if (auto it = g.find(x); it != g.end() && it->second != y) {
        s.insert(x);
      }
    }
    return s;
  }

  // D(fα)g ∪ D(fα')h
  inline graph ite(graph const& f, std::set<nhp::point> const& a, graph const& g,
                   graph const& h, std::size_t n) {
    auto const pa = dom(join(f, ident(a)));
    auto const pn = dom(join(f, ident(complement(a, n))));
    return unite(join(ident(pa), g), join(ident(pn), h));
  }

  // (f*g)h ∪ (f≠g)k
  inline graph wc(graph const& f, graph const& g, graph const& h,
                  graph const& k) {
    return unite(join(ident(agree(f, g)), h), join(ident(differ(f, g)), k));
  }

  // ⋃_{i≤n} (D(fα)g)^i D(fα')
  inline graph ext_while(graph const& f, std::set<nhp::point> const& a,
                         graph const& g, std::size_t n) {
    graph const step = join(ident(dom(join(f, ident(a)))), g);
    graph const exit = ident(dom(join(f, ident(complement(a, n)))));
    graph       pw   = ident(complement({}, n));
    graph       out;
    for (std::size_t i = 0; i <= n + 1; ++i) {
      out = unite(out, join(pw, exit));
      pw  = join(pw, step);
    }
    return out;
  }

  inline bool subgraph(graph const& f, graph const& g) {
    for (auto [x, y] : f) {
      auto it = g.find(x);
      if (it == g.end() || it->second != y) {
        return false;
      }
    }
    return true;
  }

}  // namespace oracle
