#pragma once

// JSON interchange for models, algebras, partitions, representations and
// reports. Key order is fixed so emitted files are byte-stable.

#include <istream>
#include <iterator>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "algebra.hpp"
#include "calg.hpp"
#include "error.hpp"
#include "filters.hpp"
#include "laws.hpp"
#include "model.hpp"
#include "pfun.hpp"

namespace nhp::io {

  using json = nlohmann::ordered_json;

  inline json parse_json(std::string const& text, std::string const& what) {
    try {
      return json::parse(text);
    } catch (json::parse_error const& e) {
      throw input_error(what + ": " + e.what());
    }
  }

  inline json read_json(std::istream& in, std::string const& what) {
    std::string text{std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>()};
    return parse_json(text, what);
  }

  inline void write_json(std::ostream& out, json const& j) {
    out << j.dump(2) << '\n';
  }

  enum class file_kind { model, algebra, unknown };

  inline file_kind kind_of(json const& j) {
    if (j.is_object() && j.contains("points")) {
      return file_kind::model;
    }
    if (j.is_object() && j.contains("size")) {
      return file_kind::algebra;
    }
    return file_kind::unknown;
  }

  namespace detail {
    template <typename T>
    T get(json const& j, char const* key, std::string const& what) {
      if (!j.is_object() || !j.contains(key)) {
        throw input_error(what + ": missing \"" + key + "\"");
      }
      try {
        return j.at(key).get<T>();
      } catch (json::exception const& e) {
        throw input_error(what + ": bad \"" + key + "\": " + e.what());
      }
    }

    inline std::vector<elem> get_table(json const& j, char const* key) {
      if (!j.contains(key)) {
        return {};
      }
      return get<std::vector<elem>>(j, key, "algebra");
    }

    inline json map_entries(partial_map const& f) {
      json a = json::array();
      for (point y : f.image()) {
        if (y == undefined) {
          a.push_back(nullptr);
        } else {
          a.push_back(y);
        }
      }
      return a;
    }

    inline partial_map map_from(json const& a, std::size_t points,
                                std::string const& name) {
      if (!a.is_array() || a.size() != points) {
        throw input_error("map \"" + name + "\" must list "
                          + std::to_string(points) + " entries");
      }
      std::vector<point> img;
      for (auto const& v : a) {
        if (v.is_null()) {
          img.push_back(undefined);
        } else if (v.is_number_unsigned()) {
          img.push_back(v.get<point>());
        } else {
          throw input_error("map \"" + name
                            + "\" entries must be point indices or null");
        }
      }
      return partial_map(std::move(img));
    }
  }  // namespace detail

  ////////////////////////////////////////////////////////////////////////
  // Concrete models
  ////////////////////////////////////////////////////////////////////////

  inline json to_json(concrete_model const& m) {
    json j;
    j["points"] = m.points;
    j["maps"]   = json::object();
    for (auto const& [name, f] : m.maps) {
      j["maps"][name] = detail::map_entries(f);
    }
    j["tests"] = json::object();
    for (auto const& [name, t] : m.tests) {
      json a = json::array();
      for (point x = 0; x < t.size(); ++x) {
        if (t.contains(x)) {
          a.push_back(x);
        }
      }
      j["tests"][name] = a;
    }
    if (!m.partition.empty()) {
      j["partition"] = {{"blocks", m.partition}};
    }
    return j;
  }

  inline concrete_model model_from_json(json const& j) {
    concrete_model m;
    m.points = detail::get<std::size_t>(j, "points", "model");
    if (j.contains("maps")) {
      if (!j["maps"].is_object()) {
        throw input_error("model: \"maps\" must be an object");
      }
      for (auto const& [name, a] : j["maps"].items()) {
        m.add_map(name, detail::map_from(a, m.points, name));
      }
    }
    if (j.contains("tests")) {
      if (!j["tests"].is_object()) {
        throw input_error("model: \"tests\" must be an object");
      }
      for (auto const& [name, a] : j["tests"].items()) {
        std::vector<point> members;
        try {
          members = a.get<std::vector<point>>();
        } catch (json::exception const&) {
          throw input_error("test \"" + name + "\" must list point indices");
        }
        m.add_test(name, test_set(m.points, members));
      }
    }
    if (j.contains("partition")) {
      m.partition = detail::get<std::vector<std::vector<std::string>>>(
          j["partition"], "blocks", "model partition");
    }
    return m;
  }

  ////////////////////////////////////////////////////////////////////////
  // Table algebras
  ////////////////////////////////////////////////////////////////////////

  inline json to_json(finite_algebra const& A) {
    json j;
    j["size"]       = A.size;
    j["one"]        = A.one;
    j["zero"]       = A.zero;
    j["mult"]       = A.mult;
    j["domain"]     = A.domain;
    j["tests"]      = A.tests;
    j["complement"] = A.complement;
    auto opt = [&](char const* key, std::vector<elem> const& t) {
      if (!t.empty()) {
        j[key] = t;
      }
    };
    opt("star", A.star);
    opt("neq", A.neq);
    opt("eite", A.eite);
    opt("wc", A.wc);
    opt("while", A.whl);
    if (!A.names.empty()) {
      j["names"] = A.names;
    }
    return j;
  }

  inline finite_algebra algebra_from_json(json const& j) {
    finite_algebra A;
    A.size       = detail::get<std::size_t>(j, "size", "algebra");
    A.one        = detail::get<elem>(j, "one", "algebra");
    A.zero       = detail::get<elem>(j, "zero", "algebra");
    A.mult       = detail::get<std::vector<elem>>(j, "mult", "algebra");
    A.domain     = detail::get_table(j, "domain");
    A.tests      = detail::get<std::vector<elem>>(j, "tests", "algebra");
    A.complement = detail::get<std::vector<elem>>(j, "complement", "algebra");
    A.star       = detail::get_table(j, "star");
    A.neq        = detail::get_table(j, "neq");
    A.eite       = detail::get_table(j, "eite");
    A.wc         = detail::get_table(j, "wc");
    A.whl        = detail::get_table(j, "while");
    if (j.contains("names")) {
      A.names = detail::get<std::vector<std::string>>(j, "names", "algebra");
    }
    check_dimensions(A);
    return A;
  }

  ////////////////////////////////////////////////////////////////////////
  // Partitions: blocks of element indices, or of element names
  ////////////////////////////////////////////////////////////////////////

  inline json to_json(partition const& p) {
    return {{"blocks", p.blocks}};
  }

  inline partition partition_from_json(json const& j, finite_algebra const& A) {
    if (!j.is_object() || !j.contains("blocks") || !j["blocks"].is_array()) {
      throw input_error("partition: missing \"blocks\"");
    }
    partition p;
    std::vector<bool> used(A.size, false);
    for (auto const& b : j["blocks"]) {
      std::vector<elem> block;
      for (auto const& v : b) {
        elem e = no_elem;
        if (v.is_number_unsigned()) {
          e = v.get<elem>();
        } else if (v.is_string()) {
          for (elem a = 0; a < A.size; ++a) {
            if (A.name(a) == v.get<std::string>()) {
              e = a;
            }
          }
        }
        if (e >= A.size) {
          throw input_error("partition: unknown element " + v.dump());
        }
        if (used[e]) {
          throw input_error("partition: element " + A.name(e)
                            + " listed twice");
        }
        used[e] = true;
        block.push_back(e);
      }
      if (!block.empty()) {
        p.blocks.push_back(std::move(block));
      }
    }
    for (elem a = 0; a < A.size; ++a) {
      if (!used[a]) {
        p.blocks.push_back({a});
      }
    }
    return p;
  }

  ////////////////////////////////////////////////////////////////////////
  // Reports
  ////////////////////////////////////////////////////////////////////////

  inline char const* mode_name(check_mode m) {
    switch (m) {
      case check_mode::automatic:
        return "auto";
      case check_mode::exhaustive:
        return "exhaustive";
      case check_mode::sampled:
        return "sampled";
    }
    return "?";
  }

  inline json to_json(law_result const& r) {
    json j;
    j["law"]    = r.law;
    j["status"] = r.passed ? "pass" : "fail";
    json w      = json::object();
    for (auto const& [v, i] : r.witness) {
      w[v] = i;
    }
    j["witness"] = r.passed ? json(nullptr) : w;
    j["mode"]    = mode_name(r.mode);
    j["seed"]    = r.seed;
    j["count"]   = r.count;
    return j;
  }

  inline json to_json(check_report const& rep) {
    json j;
    j["suite"]   = rep.suite;
    j["status"]  = rep.passed() ? "pass" : "fail";
    j["results"] = json::array();
    for (auto const& r : rep.results) {
      j["results"].push_back(to_json(r));
    }
    return j;
  }

  inline json to_json(congruence_report const& c, finite_algebra const& A) {
    json j;
    j["congruence"] = c.congruence;
    if (!c.congruence) {
      j["op"] = c.op;
      json t  = json::array();
      for (elem e : c.tuple) {
        t.push_back(A.name(e));
      }
      j["tuple"] = t;
    }
    j["mixes_sorts"] = c.mixes_sorts;
    if (c.mixes_sorts) {
      json b = json::array();
      for (elem e : c.mixed_block) {
        b.push_back(A.name(e));
      }
      j["mixed_block"] = b;
    }
    return j;
  }

  inline json to_json(representation const& rep) {
    json j;
    j["components"] = json::array();
    for (auto const& c : rep.components) {
      json cj;
      cj["filter_generator"] = c.F.generator;
      cj["pair"]             = {c.pair.first, c.pair.second};
      cj["classes"]          = c.dp.classes;
      j["components"].push_back(cj);
    }
    j["theta"] = json::object();
    for (std::size_t a = 0; a < rep.theta.size(); ++a) {
      j["theta"][std::to_string(a)] = detail::map_entries(rep.theta[a]);
    }
    return j;
  }

  inline json to_json(rep_report const& r, finite_algebra const& A) {
    json j;
    j["status"]  = r.ok() ? "pass" : "fail";
    j["checked"] = r.checked;
    json counts  = json::object();
    for (auto const& [k, n] : r.counts) {
      counts[k] = n;
    }
    j["failure_counts"] = counts;
    j["failures"]       = json::array();
    for (auto const& f : r.failures) {
      json at = json::array();
      for (elem e : f.at) {
        at.push_back(A.name(e));
      }
      j["failures"].push_back({{"check", f.check}, {"at", at}});
    }
    return j;
  }

  // Traces are included when given (concrete contexts).
  inline json to_json(bstar const& B,
                      std::vector<std::string> const* traces = nullptr) {
    json a = json::array();
    for (std::size_t i = 0; i < B.preds.size(); ++i) {
      json p;
      if (traces != nullptr) {
        p["trace"] = (*traces)[i];
      }
      p["expression"] = B.preds[i].expr;
      a.push_back(p);
    }
    return a;
  }

}  // namespace nhp::io
