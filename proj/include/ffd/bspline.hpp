#pragma once

#include <Eigen/Core>

#include <cmath>

#include "ffd/errors.hpp"

namespace ffd {

inline constexpr int kSplineDegree = 3;

// Open-uniform (clamped) knot vector for a cubic B-spline basis over [0, 1].
// For n control points there are n + 4 knots: the first and last knot are
// repeated 4 times and the interior knots are equispaced.
template <class Scalar = double>
struct KnotVectorT {
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> knots;

    static KnotVectorT clamped_cubic(int num_controls) {
        if (num_controls < kSplineDegree + 1)
            fail("bad-dims", "cubic axis needs at least 4 control points, got " +
                                 std::to_string(num_controls));
        KnotVectorT kv;
        kv.knots.resize(num_controls + kSplineDegree + 1);
        const int spans = num_controls - kSplineDegree;
        for (int i = 0; i <= kSplineDegree; ++i) kv.knots[i] = Scalar(0);
        for (int i = 1; i < spans; ++i)
            kv.knots[kSplineDegree + i] = Scalar(i) / Scalar(spans);
        for (int i = 0; i <= kSplineDegree; ++i)
            kv.knots[num_controls + i] = Scalar(1);
        return kv;
    }

    int num_controls() const { return int(knots.size()) - kSplineDegree - 1; }

    // Greville abscissa of control i: average of the 3 knots following t_i.
    Scalar greville(int i) const {
        return (knots[i + 1] + knots[i + 2] + knots[i + 3]) / Scalar(3);
    }
};

using KnotVector = KnotVectorT<double>;

template <class Scalar>
struct BasisSpanT {
    int span;                            // knot interval: t[span] <= u < t[span+1]
    Eigen::Matrix<Scalar, 4, 1> weights; // controls span-3 .. span
};

using BasisSpan = BasisSpanT<double>;

// Knot span lookup with half-open intervals, closed at the top so u == 1
// lands in the last nonempty span.
template <class Scalar>
int find_span(Scalar u, const KnotVectorT<Scalar>& kv) {
    const int n = kv.num_controls();
    if (u >= Scalar(1)) return n - 1;
    int lo = kSplineDegree, hi = n;
    while (hi - lo > 1) {
        const int mid = (lo + hi) / 2;
        if (u < kv.knots[mid]) hi = mid; else lo = mid;
    }
    return lo;
}

// Cubic Cox-de Boor evaluation of the 4 basis functions active at u.
// The weights are nonnegative and sum to 1 (partition of unity).
template <class Scalar>
BasisSpanT<Scalar> eval_basis(Scalar u, const KnotVectorT<Scalar>& kv) {
    if (u < Scalar(0) || u > Scalar(1)) {
        if (u < Scalar(0) - Scalar(1e-12) || u > Scalar(1) + Scalar(1e-12))
            fail("domain-error",
                 "parameter " + std::to_string(double(u)) + " outside [0, 1]");
        u = u < Scalar(0) ? Scalar(0) : Scalar(1);
    }
    BasisSpanT<Scalar> out;
    const int span = find_span(u, kv);
    out.span = span;

    // The NURBS Book alg. A2.2, specialized to degree 3.
    Scalar left[4], right[4];
    Eigen::Matrix<Scalar, 4, 1>& N = out.weights;
    N[0] = Scalar(1);
    for (int j = 1; j <= kSplineDegree; ++j) {
        left[j] = u - kv.knots[span + 1 - j];
        right[j] = kv.knots[span + j] - u;
        Scalar saved(0);
        for (int r = 0; r < j; ++r) {
            const Scalar temp = N[r] / (right[r + 1] + left[j - r]);
            N[r] = saved + right[r + 1] * temp;
            saved = left[j - r] * temp;
        }
        N[j] = saved;
    }
    return out;
}

}  // namespace ffd
