#ifndef PPSM_ERRORS_HPP
#define PPSM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ppsm {

enum class errc {
  ok = 0,
  invalid_argument,
  degenerate_observable,
  vanishing_postselection,
  orthogonal_pps,
  numerical_failure,
  grid_too_coarse,
  out_of_regime,
  insensitive_pointer,
  degenerate_spread,
  no_convergence,
};

const char* errc_name(errc c);

class error : public std::runtime_error {
public:
  error(errc code, std::string what) : std::runtime_error(std::move(what)), code_(code) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, std::string what) {
  throw error(code, std::move(what));
}

} // namespace ppsm

#endif
