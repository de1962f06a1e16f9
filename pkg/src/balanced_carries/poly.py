"""Dense integer polynomials as ascending coefficient lists.

[1, 0, 3] stands for 1 + 3x**2.  Coefficients are arbitrary-precision
integers; nothing here ever touches floating point.
"""


def poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def poly_pow(a, k):
    """a**k by repeated squaring; a**0 is the constant 1."""
    if k < 0:
        raise ValueError("exponent must be nonnegative")
    result = [1]
    square = list(a)
    while k:
        if k & 1:
            result = poly_mul(result, square)
        k >>= 1
        if k:
            square = poly_mul(square, square)
    return result


def coefficient(a, exponent):
    """Coefficient of x**exponent, 0 outside the stored range."""
    if 0 <= exponent < len(a):
        return a[exponent]
    return 0
