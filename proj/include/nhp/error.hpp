#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nhp {

  // Malformed input: bad file contents, mismatched point sets, unknown names.
  class input_error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // An operation was requested from a context that cannot supply it.
  class capability_error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // An internal consistency check failed; indicates corrupted input tables.
  class invariant_error : public std::logic_error {
   public:
    using std::logic_error::logic_error;
  };

  class parse_error : public input_error {
   public:
    parse_error(std::string const& msg, std::size_t pos)
        : input_error(msg + " at position " + std::to_string(pos)),
          _pos(pos) {}

    std::size_t position() const noexcept {
      return _pos;
    }

   private:
    std::size_t _pos;
  };

  class sort_error : public input_error {
   public:
    sort_error(std::string const& msg, std::string subterm)
        : input_error(msg + ": " + subterm), _subterm(std::move(subterm)) {}

    std::string const& subterm() const noexcept {
      return _subterm;
    }

   private:
    std::string _subterm;
  };

}  // namespace nhp
