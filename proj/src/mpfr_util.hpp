#pragma once

#include <mpfr.h>

#include <utility>

namespace finegrain::detail {

// Minimal RAII handle for mpfr_t; arithmetic goes through the C API.
class Mp {
 public:
  explicit Mp(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  Mp(const Mp& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Mp(Mp&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  Mp& operator=(const Mp& o) {
    if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Mp& operator=(Mp&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Mp() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  operator mpfr_ptr() { return v_; }
  operator mpfr_srcptr() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

 private:
  mpfr_t v_;
};

// {x}: subtract floor, result in [0,1).
inline void mp_frac(mpfr_ptr out, mpfr_srcptr x) {
  mpfr_t fl;
  mpfr_init2(fl, mpfr_get_prec(x));
  mpfr_floor(fl, x);
  mpfr_sub(out, x, fl, MPFR_RNDN);
  mpfr_clear(fl);
}

}  // namespace finegrain::detail
