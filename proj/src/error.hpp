#pragma once

#include <stdexcept>
#include <string>

namespace hurwitz {

enum class errc {
  syntax,
  degree_mismatch,
  riemann_hurwitz,
  degenerate,
  parity,
  negative_genus,
  unsupported_base,
  unsupported_degree,
  precondition,
  not_connected,
  bad_argument,
  internal,
};

class error : public std::runtime_error {
public:
  error(errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  errc code() const { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw error(code, msg); }

}  // namespace hurwitz
