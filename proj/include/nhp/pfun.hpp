#pragma once

// Concrete models: partial maps on a finite point set {0, ..., n-1}, with
// composition read left to right, (f;g)(x) = g(f(x)).

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace nhp {

  using point = std::uint32_t;

  inline constexpr point undefined = std::numeric_limits<point>::max();

  class partial_map {
   public:
    partial_map() = default;

    explicit partial_map(std::vector<point> image) : _image(std::move(image)) {
      for (point y : _image) {
        if (y != undefined && y >= _image.size()) {
          throw input_error("partial map entry " + std::to_string(y)
                            + " out of range for " + std::to_string(size())
                            + " points");
        }
      }
    }

    static partial_map identity(std::size_t n) {
      std::vector<point> img(n);
      for (std::size_t x = 0; x < n; ++x) {
        img[x] = static_cast<point>(x);
      }
      return partial_map(unchecked{}, std::move(img));
    }

    static partial_map null(std::size_t n) {
      return partial_map(unchecked{}, std::vector<point>(n, undefined));
    }

    // Restriction of the identity to the points with mask[x] true.
    static partial_map restricted_identity(std::vector<bool> const& mask) {
      std::vector<point> img(mask.size(), undefined);
      for (std::size_t x = 0; x < mask.size(); ++x) {
        if (mask[x]) {
          img[x] = static_cast<point>(x);
        }
      }
      return partial_map(unchecked{}, std::move(img));
    }

    std::size_t size() const noexcept {
      return _image.size();
    }

    point operator()(point x) const noexcept {
      return _image[x];
    }

    bool defined(point x) const noexcept {
      return _image[x] != undefined;
    }

    std::span<point const> image() const noexcept {
      return _image;
    }

    bool empty_domain() const noexcept {
      return std::all_of(_image.begin(), _image.end(), [](point y) {
        return y == undefined;
      });
    }

    bool is_restricted_identity() const noexcept {
      for (std::size_t x = 0; x < _image.size(); ++x) {
        if (_image[x] != undefined && _image[x] != x) {
          return false;
        }
      }
      return true;
    }

    friend bool operator==(partial_map const&, partial_map const&) = default;
    friend auto operator<=>(partial_map const&, partial_map const&) = default;

    // Building block for the operations below; skips the range check.
    struct unchecked {};
    partial_map(unchecked, std::vector<point> image) noexcept
        : _image(std::move(image)) {}

   private:
    std::vector<point> _image;
  };

  // A test: a subset of the points, equivalently the restriction of the
  // identity to that subset.
  class test_set {
   public:
    test_set() = default;

    test_set(std::size_t n, std::vector<point> const& members)
        : _map(partial_map::null(n)) {
      std::vector<point> img(n, undefined);
      for (point x : members) {
        if (x >= n) {
          throw input_error("test member " + std::to_string(x)
                            + " out of range for " + std::to_string(n)
                            + " points");
        }
        img[x] = x;
      }
      _map = partial_map(partial_map::unchecked{}, std::move(img));
    }

    static test_set from_map(partial_map m) {
      if (!m.is_restricted_identity()) {
        throw input_error("map is not a restriction of the identity");
      }
      test_set t;
      t._map = std::move(m);
      return t;
    }

    static test_set full(std::size_t n) {
      return from_map(partial_map::identity(n));
    }

    static test_set empty(std::size_t n) {
      return from_map(partial_map::null(n));
    }

    std::size_t size() const noexcept {
      return _map.size();
    }

    bool contains(point x) const noexcept {
      return _map.defined(x);
    }

    std::vector<point> members() const {
      std::vector<point> out;
      for (point x = 0; x < size(); ++x) {
        if (contains(x)) {
          out.push_back(x);
        }
      }
      return out;
    }

    partial_map const& as_map() const noexcept {
      return _map;
    }

    friend bool operator==(test_set const&, test_set const&) = default;
    friend auto operator<=>(test_set const&, test_set const&) = default;

   private:
    partial_map _map;
  };

  namespace detail {
    inline void require_same_space(std::size_t a, std::size_t b) {
      if (a != b) {
        throw input_error("point set mismatch: " + std::to_string(a) + " vs "
                          + std::to_string(b));
      }
    }

    template <typename... Maps>
    void require_same_space(partial_map const& f, Maps const&... rest) {
      (require_same_space(f.size(), rest.size()), ...);
    }

    template <typename F>
    partial_map pointwise(std::size_t n, F&& fn) {
      std::vector<point> img(n);
      for (point x = 0; x < n; ++x) {
        img[x] = fn(x);
      }
      return partial_map(partial_map::unchecked{}, std::move(img));
    }

    // Operations taking a test argument in its map form; `alpha` must be a
    // restriction of the identity. These are the hot paths of law checking.
    inline partial_map ext_ite(partial_map const& f,
                               partial_map const& alpha,
                               partial_map const& g,
                               partial_map const& h) {
      require_same_space(f, alpha, g, h);
      return pointwise(f.size(), [&](point x) {
        point y = f(x);
        if (y == undefined) {
          return undefined;
        }
        return alpha.defined(y) ? g(x) : h(x);
      });
    }

    inline partial_map while_do(partial_map const& alpha,
                                partial_map const& f) {
      require_same_space(alpha, f);
      std::size_t const n = f.size();
      return pointwise(n, [&](point x) {
        point cur = x;
        // n + 1 consecutive states inside alpha must revisit a state.
        for (std::size_t step = 0; step <= n; ++step) {
          if (!alpha.defined(cur)) {
            return cur;
          }
          cur = f(cur);
          if (cur == undefined) {
            return undefined;
          }
        }
        return undefined;
      });
    }

    inline partial_map ext_while(partial_map const& f,
                                 partial_map const& alpha,
                                 partial_map const& g) {
      require_same_space(f, alpha, g);
      std::size_t const n = f.size();
      return pointwise(n, [&](point x) {
        point cur = x;
        for (std::size_t step = 0; step <= n; ++step) {
          point probe = f(cur);
          if (probe == undefined) {
            return undefined;
          }
          if (!alpha.defined(probe)) {
            return cur;
          }
          cur = g(cur);
          if (cur == undefined) {
            return undefined;
          }
        }
        return undefined;
      });
    }
  }  // namespace detail

  inline partial_map compose(partial_map const& f, partial_map const& g) {
    detail::require_same_space(f, g);
    return detail::pointwise(f.size(), [&](point x) {
      point y = f(x);
      return y == undefined ? undefined : g(y);
    });
  }

  inline test_set domain_of(partial_map const& f) {
    return test_set::from_map(detail::pointwise(f.size(), [&](point x) {
      return f.defined(x) ? x : undefined;
    }));
  }

  inline test_set test_complement(test_set const& alpha) {
    partial_map const& a = alpha.as_map();
    return test_set::from_map(detail::pointwise(a.size(), [&](point x) {
      return a.defined(x) ? undefined : x;
    }));
  }

  inline partial_map intersect(partial_map const& f, partial_map const& g) {
    detail::require_same_space(f, g);
    return detail::pointwise(f.size(), [&](point x) {
      return (f.defined(x) && f(x) == g(x)) ? f(x) : undefined;
    });
  }

  // s*t: where both are defined and agree.
  inline test_set agree_star(partial_map const& f, partial_map const& g) {
    detail::require_same_space(f, g);
    return test_set::from_map(detail::pointwise(f.size(), [&](point x) {
      return (f.defined(x) && f(x) == g(x)) ? x : undefined;
    }));
  }

  // s≠t: where both are defined and differ.
  inline test_set disagree(partial_map const& f, partial_map const& g) {
    detail::require_same_space(f, g);
    return test_set::from_map(detail::pointwise(f.size(), [&](point x) {
      return (f.defined(x) && g.defined(x) && f(x) != g(x)) ? x : undefined;
    }));
  }

  inline partial_map ext_ite(partial_map const& f,
                             test_set const&    alpha,
                             partial_map const& g,
                             partial_map const& h) {
    return detail::ext_ite(f, alpha.as_map(), g, h);
  }

  inline partial_map weak_cmp(partial_map const& f,
                              partial_map const& g,
                              partial_map const& h,
                              partial_map const& k) {
    detail::require_same_space(f, g, h, k);
    return detail::pointwise(f.size(), [&](point x) {
      if (!f.defined(x) || !g.defined(x)) {
        return undefined;
      }
      return f(x) == g(x) ? h(x) : k(x);
    });
  }

  // An undefined application mid-loop yields undefined.
  inline partial_map while_do(test_set const& alpha, partial_map const& f) {
    return detail::while_do(alpha.as_map(), f);
  }

  // ((f,α):g): keep applying g while f of the current state lies in α.
  // Undefined as soon as f is undefined at a visited state.
  inline partial_map ext_while(partial_map const& f,
                               test_set const&    alpha,
                               partial_map const& g) {
    return detail::ext_while(f, alpha.as_map(), g);
  }

  // Graph inclusion, which coincides with f = D(f);g.
  inline bool natural_leq(partial_map const& f, partial_map const& g) {
    detail::require_same_space(f, g);
    for (point x = 0; x < f.size(); ++x) {
      if (f.defined(x) && f(x) != g(x)) {
        return false;
      }
    }
    return true;
  }

  // P(s) = D(s)'
  inline test_set antidomain_P(partial_map const& f) {
    return test_complement(domain_of(f));
  }

  // (s⋈t) = (s*t) ∪ D(s)'D(t)': where s and t do not disagree.
  inline test_set bowtie(partial_map const& f, partial_map const& g) {
    detail::require_same_space(f, g);
    return test_set::from_map(detail::pointwise(f.size(), [&](point x) {
      bool const fd = f.defined(x), gd = g.defined(x);
      if (fd && gd) {
        return f(x) == g(x) ? x : undefined;
      }
      return (!fd && !gd) ? x : undefined;
    }));
  }

  // s⊔t = D(s)[s,t]: s where defined, t elsewhere.
  inline partial_map pref_union(partial_map const& f, partial_map const& g) {
    detail::require_same_space(f, g);
    return detail::pointwise(f.size(), [&](point x) {
      return f.defined(x) ? f(x) : g(x);
    });
  }

  struct full_model_result {
    std::size_t              points = 0;
    std::vector<partial_map> maps;
    std::vector<test_set>    tests;
  };

  inline constexpr std::size_t full_model_max_points = 6;

  // Every partial map and every test on n points. Maps are enumerated as an
  // odometer over images (point 0 most significant, "undefined" first);
  // test k has member x iff bit x of k is set.
  inline full_model_result full_model(std::size_t n) {
    if (n > full_model_max_points) {
      throw input_error("full_model: n = " + std::to_string(n)
                        + " exceeds the supported maximum of "
                        + std::to_string(full_model_max_points));
    }
    full_model_result out;
    out.points = n;
    std::size_t total = 1;
    for (std::size_t x = 0; x < n; ++x) {
      total *= n + 1;
    }
    out.maps.reserve(total);
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<point> img(n);
      std::size_t        rest = code;
      for (std::size_t x = n; x-- > 0;) {
        auto digit = static_cast<point>(rest % (n + 1));  // 0 = undefined
        rest /= n + 1;
        img[x] = digit == 0 ? undefined : digit - 1;
      }
      out.maps.emplace_back(partial_map::unchecked{}, std::move(img));
    }
    for (std::size_t k = 0; k < (std::size_t{1} << n); ++k) {
      std::vector<bool> mask(n);
      for (std::size_t x = 0; x < n; ++x) {
        mask[x] = (k >> x) & 1U;
      }
      out.tests.push_back(
          test_set::from_map(partial_map::restricted_identity(mask)));
    }
    return out;
  }

  struct partial_map_hash {
    std::size_t operator()(partial_map const& m) const noexcept {
      std::size_t h = 1469598103934665603ULL;
      for (point y : m.image()) {
        h ^= y + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      }
      return h;
    }
  };

}  // namespace nhp
