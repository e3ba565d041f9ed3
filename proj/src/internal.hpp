#pragma once

#include "finegrain/sequence.hpp"
#include "mpfr_util.hpp"

namespace finegrain::detail {

// a_n at working precision (Table entries are doubles already).
inline void set_a_value(mpfr_ptr out, const ASequence& a, std::int64_t n) {
  switch (a.kind) {
    case ASequenceKind::Linear:
      mpfr_set_si(out, n, MPFR_RNDN);
      return;
    case ASequenceKind::Sqrt:
      mpfr_set_si(out, n, MPFR_RNDN);
      mpfr_sqrt(out, out, MPFR_RNDN);
      return;
    case ASequenceKind::LogSquared:
      mpfr_set_si(out, n + 1, MPFR_RNDN);
      mpfr_log(out, out, MPFR_RNDN);
      mpfr_sqr(out, out, MPFR_RNDN);
      return;
    case ASequenceKind::Table:
      mpfr_set_d(out, a.value(n), MPFR_RNDN);
      return;
  }
}

}  // namespace finegrain::detail
