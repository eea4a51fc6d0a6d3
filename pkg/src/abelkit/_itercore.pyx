# cython: language_level=3
"""Compiled iteration kernel (MPFR).

Hot loop for orbit iteration: x <- p(x)/q(x) at fixed binary precision with
integer polynomial coefficients and domain-escape checks each step. Performs
the exact same rounding sequence as _iterpure.iterate_raw so results agree
bit for bit; see that module for the protocol.
"""

cdef extern from "gmp.h":
    ctypedef struct __mpz_struct:
        pass
    ctypedef __mpz_struct mpz_t[1]
    void mpz_init(mpz_t)
    void mpz_clear(mpz_t)
    int mpz_set_str(mpz_t, const char *, int)

cdef extern from "mpfr.h":
    ctypedef struct __mpfr_struct:
        pass
    ctypedef __mpfr_struct mpfr_t[1]
    ctypedef long mpfr_prec_t
    ctypedef int mpfr_rnd_t
    ctypedef long mpfr_exp_t
    int MPFR_RNDN
    void mpfr_init2(mpfr_t, mpfr_prec_t)
    void mpfr_clear(mpfr_t)
    int mpfr_set(mpfr_t, const mpfr_t, mpfr_rnd_t) nogil
    int mpfr_set_z(mpfr_t, const mpz_t, mpfr_rnd_t)
    int mpfr_mul(mpfr_t, const mpfr_t, const mpfr_t, mpfr_rnd_t) nogil
    int mpfr_add(mpfr_t, const mpfr_t, const mpfr_t, mpfr_rnd_t) nogil
    int mpfr_div(mpfr_t, const mpfr_t, const mpfr_t, mpfr_rnd_t) nogil
    int mpfr_sgn(const mpfr_t) nogil
    int mpfr_cmp(const mpfr_t, const mpfr_t) nogil
    int mpfr_zero_p(const mpfr_t) nogil
    char *mpfr_get_str(char *, mpfr_exp_t *, int, size_t, const mpfr_t, mpfr_rnd_t)
    void mpfr_free_str(char *)

cdef enum:
    _OK = 0
    _ESCAPED = 1
    _POLE = 2

STATUS_OK = _OK
STATUS_ESCAPED = _ESCAPED
STATUS_POLE = _POLE

DEF MAX_COEFFS = 64


cdef int _set_from_pyint(mpfr_t rop, object value) except -1:
    # conversion via an exact mpz; rounds to rop's own precision
    cdef mpz_t z
    cdef bytes text = b"%x" % value if value >= 0 else b"-%x" % (-value)
    mpz_init(z)
    if mpz_set_str(z, text, 16) != 0:
        mpz_clear(z)
        raise ValueError("bad integer literal")
    mpfr_set_z(rop, z, MPFR_RNDN)
    mpz_clear(z)
    return 0


def iterate_raw(pc, qc, x0_num, x0_den, long n, long prec, sup_num, sup_den):
    """Iterate x <- p(x)/q(x) n times at `prec` bits; see _iterpure for protocol."""
    cdef Py_ssize_t dp = len(pc)
    cdef Py_ssize_t dq = len(qc)
    cdef Py_ssize_t i
    cdef long step = 0
    cdef int status = _OK
    cdef bint has_sup
    cdef long denbits
    cdef mpfr_t x, pval, qval, sup, dexact
    cdef mpfr_t cp[MAX_COEFFS]
    cdef mpfr_t cq[MAX_COEFFS]
    cdef mpfr_exp_t expo = 0
    cdef char *digits = NULL

    if dp == 0 or dq == 0:
        raise ValueError("empty coefficient list")
    if dp > MAX_COEFFS or dq > MAX_COEFFS:
        raise ValueError("polynomial degree too large for the kernel")
    if n < 0:
        raise ValueError("n must be >= 0")
    if prec < 8:
        raise ValueError("precision too small")
    has_sup = (int(sup_den) != 0)

    # denominators of the start point and the bound divide exactly; the
    # quotient is then rounded once, matching mpf(num)/den in the pure kernel
    denbits = 8
    nbits = int(x0_den).bit_length() + 2
    if nbits > denbits:
        denbits = nbits
    nbits = int(sup_den).bit_length() + 2
    if nbits > denbits:
        denbits = nbits

    mpfr_init2(x, prec)
    mpfr_init2(pval, prec)
    mpfr_init2(qval, prec)
    mpfr_init2(sup, prec)
    mpfr_init2(dexact, denbits)
    for i in range(dp):
        mpfr_init2(cp[i], prec)
        _set_from_pyint(cp[i], int(pc[i]))
    for i in range(dq):
        mpfr_init2(cq[i], prec)
        _set_from_pyint(cq[i], int(qc[i]))

    try:
        _set_from_pyint(x, int(x0_num))
        _set_from_pyint(dexact, int(x0_den))
        mpfr_div(x, x, dexact, MPFR_RNDN)
        if has_sup:
            _set_from_pyint(sup, int(sup_num))
            _set_from_pyint(dexact, int(sup_den))
            mpfr_div(sup, sup, dexact, MPFR_RNDN)

        with nogil:
            for step in range(n):
                mpfr_set(pval, cp[dp - 1], MPFR_RNDN)
                for i in range(dp - 2, -1, -1):
                    mpfr_mul(pval, pval, x, MPFR_RNDN)
                    mpfr_add(pval, pval, cp[i], MPFR_RNDN)
                mpfr_set(qval, cq[dq - 1], MPFR_RNDN)
                for i in range(dq - 2, -1, -1):
                    mpfr_mul(qval, qval, x, MPFR_RNDN)
                    mpfr_add(qval, qval, cq[i], MPFR_RNDN)
                if mpfr_zero_p(qval):
                    status = _POLE
                    break
                if mpfr_sgn(qval) < 0:
                    status = _ESCAPED
                    break
                mpfr_div(x, pval, qval, MPFR_RNDN)
                if mpfr_sgn(x) <= 0 or (has_sup and mpfr_cmp(x, sup) >= 0):
                    step += 1
                    status = _ESCAPED
                    break

        if status != _OK:
            return (status, int(step), 0, 0)

        # export the exact final value as mantissa * 2^exponent
        digits = mpfr_get_str(NULL, &expo, 16, 0, x, MPFR_RNDN)
        if digits == NULL:
            raise RuntimeError("mpfr_get_str failed")
        text = (<bytes> digits).decode()
        mpfr_free_str(digits)
        neg = text.startswith("-")
        if neg:
            text = text[1:]
        mant = int(text, 16)
        if neg:
            mant = -mant
        exp2 = 4 * (<long> expo - len(text))
        return (_OK, int(n), mant, int(exp2))
    finally:
        mpfr_clear(x)
        mpfr_clear(pval)
        mpfr_clear(qval)
        mpfr_clear(sup)
        mpfr_clear(dexact)
        for i in range(dp):
            mpfr_clear(cp[i])
        for i in range(dq):
            mpfr_clear(cq[i])
