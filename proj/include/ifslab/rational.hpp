#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "ifslab/errors.hpp"

namespace ifslab {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat(long num, long den) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline double to_double(const Rat& q) { return q.get_d(); }

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

// q^e for integer e >= 0, exact. Canonical in, canonical out.
inline Rat rat_pow(const Rat& q, unsigned long e) {
    Rat r;
    mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(q.get_mpq_t()), e);
    mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(q.get_mpq_t()), e);
    return r;
}

inline Int int_pow(const Int& b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

// Nearest multiple of 2^-bits. Keeps denominators small in hot loops; the
// rounding error is at most 2^-(bits+1).
inline Rat dyadic_round(const Rat& x, unsigned long bits) {
    Int t;
    mpz_mul_2exp(t.get_mpz_t(), mpq_numref(x.get_mpq_t()), bits);
    Int q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), t.get_mpz_t(), mpq_denref(x.get_mpq_t()));
    if (Rat(2) * Rat(r) >= Rat(Int(mpq_denref(x.get_mpq_t())))) q += 1;
    Rat out;
    mpz_set(mpq_numref(out.get_mpq_t()), q.get_mpz_t());
    mpz_set_ui(mpq_denref(out.get_mpq_t()), 1);
    mpz_mul_2exp(mpq_denref(out.get_mpq_t()), mpq_denref(out.get_mpq_t()), bits);
    out.canonicalize();
    return out;
}

// Parses "p/q", "p" or a sign-prefixed variant. No float round-trips.
Rat parse_rat(std::string_view text);

// Canonical "p/q" (or "p" when q == 1).
std::string rat_str(const Rat& q);

}  // namespace ifslab
