#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nhp {

  // Operations beyond composition, 0, 1 and test complement, which every
  // context supplies.
  enum class op {
    dom,      // D(s)
    star,     // s*t
    neq,      // s≠t
    eite,     // (s,α)[t,u]
    wc,       // (s=t)[u,v]
    whl,      // ((t,α):s)
    antidom,  // P(s) = D(s)'
    bowtie,   // s⋈t
    cup       // s⊔t
  };

  inline constexpr std::array<op, 9> all_ops = {op::dom,
                                                op::star,
                                                op::neq,
                                                op::eite,
                                                op::wc,
                                                op::whl,
                                                op::antidom,
                                                op::bowtie,
                                                op::cup};

  inline constexpr std::string_view op_name(op o) noexcept {
    switch (o) {
      case op::dom:
        return "D";
      case op::star:
        return "star";
      case op::neq:
        return "neq";
      case op::eite:
        return "ite";
      case op::wc:
        return "wc";
      case op::whl:
        return "while";
      case op::antidom:
        return "P";
      case op::bowtie:
        return "bowtie";
      case op::cup:
        return "cup";
    }
    return "?";
  }

  inline std::optional<op> op_from_name(std::string_view name) noexcept {
    for (op o : all_ops) {
      if (op_name(o) == name) {
        return o;
      }
    }
    if (name == "eite") {
      return op::eite;
    }
    if (name == "whl") {
      return op::whl;
    }
    return std::nullopt;
  }

  // Small fixed set of ops.
  class op_set {
   public:
    op_set() = default;
    op_set(std::initializer_list<op> ops) {
      for (op o : ops) {
        insert(o);
      }
    }

    void insert(op o) noexcept {
      _bits |= bit(o);
    }
    void erase(op o) noexcept {
      _bits &= ~bit(o);
    }
    bool contains(op o) const noexcept {
      return (_bits & bit(o)) != 0;
    }
    bool empty() const noexcept {
      return _bits == 0;
    }
    op_set& operator|=(op_set other) noexcept {
      _bits |= other._bits;
      return *this;
    }
    bool subset_of(op_set other) const noexcept {
      return (_bits & ~other._bits) == 0;
    }
    std::vector<op> list() const {
      std::vector<op> out;
      for (op o : all_ops) {
        if (contains(o)) {
          out.push_back(o);
        }
      }
      return out;
    }
    friend bool operator==(op_set, op_set) = default;

   private:
    static constexpr unsigned bit(op o) noexcept {
      return 1U << static_cast<unsigned>(o);
    }
    unsigned _bits = 0;
  };

  inline std::string to_string(op_set ops) {
    std::string out;
    for (op o : ops.list()) {
      if (!out.empty()) {
        out += ",";
      }
      out += op_name(o);
    }
    return out;
  }

}  // namespace nhp
