#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"
#include "pfun.hpp"

namespace nhp {

  // Identifier syntax for named maps and tests: [A-Za-z_][A-Za-z0-9_']*
  inline bool valid_name(std::string_view name) noexcept {
    auto alpha = [](char c) {
      return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
    };
    auto digit = [](char c) { return c >= '0' && c <= '9'; };
    if (name.empty() || !alpha(name.front())) {
      return false;
    }
    for (char c : name.substr(1)) {
      if (!alpha(c) && !digit(c) && c != '\'') {
        return false;
      }
    }
    return true;
  }

  // A finite collection of named partial maps and tests on a shared point
  // set; optionally carries a partition of its closure given by names.
  struct concrete_model {
    std::size_t                                       points = 0;
    std::vector<std::pair<std::string, partial_map>>  maps;
    std::vector<std::pair<std::string, test_set>>     tests;
    std::vector<std::vector<std::string>>             partition;

    void add_map(std::string name, partial_map m) {
      check_name(name);
      detail::require_same_space(points, m.size());
      maps.emplace_back(std::move(name), std::move(m));
    }

    void add_test(std::string name, test_set t) {
      check_name(name);
      detail::require_same_space(points, t.size());
      tests.emplace_back(std::move(name), std::move(t));
    }

    partial_map const* find_map(std::string_view name) const noexcept {
      for (auto const& [n, m] : maps) {
        if (n == name) {
          return &m;
        }
      }
      return nullptr;
    }

    test_set const* find_test(std::string_view name) const noexcept {
      for (auto const& [n, t] : tests) {
        if (n == name) {
          return &t;
        }
      }
      return nullptr;
    }

   private:
    void check_name(std::string const& name) const {
      if (!valid_name(name)) {
        throw input_error("invalid name \"" + name + "\"");
      }
      if (find_map(name) != nullptr || find_test(name) != nullptr) {
        throw input_error("duplicate name \"" + name + "\"");
      }
    }
  };

}  // namespace nhp
