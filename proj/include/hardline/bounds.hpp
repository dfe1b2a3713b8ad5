#pragma once

// Iterated maps bounding admissible ratios of adjacent masses:
//   g(x) = 2x - 1,            g_k = g o ... o g (k times) = 2^k (x - 1) + 1
//   f(x) = (1 + x) / (3 - x), f_k = f o ... o f (k times) = (k(x-1) - 2x) / (k(x-1) - 2)

#include "hardline/error.hpp"
#include "hardline/scalar.hpp"

namespace hardline {

/// One step of g: 2x - 1.
template <Scalar T>
T g_step(const T& x)
{
    return T(2) * x - T(1);
}

/// One step of f: (1 + x) / (3 - x). Pole at x = 3.
template <Scalar T>
T f_step(const T& x)
{
    if (x == T(3))
        throw Error(ErrorKind::Domain, "f has a pole at x = 3");
    return (T(1) + x) / (T(3) - x);
}

/// Closed form 2^k (x - 1) + 1, k >= 1.
template <Scalar T>
T g_k(const T& x, unsigned k)
{
    if (k == 0)
        throw Error(ErrorKind::Domain, "g_k needs k >= 1");
    return pow2<T>(k) * (x - T(1)) + T(1);
}

/// Closed form (k(x-1) - 2x) / (k(x-1) - 2), k >= 1. Pole at x = (k+2)/k.
template <Scalar T>
T f_k(const T& x, unsigned k)
{
    if (k == 0)
        throw Error(ErrorKind::Domain, "f_k needs k >= 1");
    const T kk = T(static_cast<long>(k));
    const T den = kk * (x - T(1)) - T(2);
    if (den == T(0))
        throw Error(ErrorKind::Domain, "f_k evaluated at its pole (k+2)/k");
    return (kk * (x - T(1)) - T(2) * x) / den;
}

template <Scalar T>
struct CoincidencePoint {
    T x;
    T value;
};

/// The point x = (k + 2 - 2^(1-k)) / k where f_k and g_k agree, with common
/// value (k + 2^(k+1) - 2) / k.
template <Scalar T>
CoincidencePoint<T> coincidence_point(unsigned k)
{
    if (k == 0)
        throw Error(ErrorKind::Domain, "coincidence_point needs k >= 1");
    const T kk = T(static_cast<long>(k));
    const T x = (kk + T(2) - T(2) / pow2<T>(k)) / kk;
    const T value = (kk + pow2<T>(k + 1) - T(2)) / kk;
    return {x, value};
}

}  // namespace hardline
