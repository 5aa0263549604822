#pragma once

// Adaptive embedded Runge-Kutta (Dormand-Prince 5(4)) for 2x2 complex linear
// matrix ODEs Y'(s) = M(s) * Y(s) on s in [0, 1].

#include "lawson/types.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace lawson {

// rhs(s) returns the coefficient matrix M(s); integrates Y' = M(s)Y from
// Y(0) = y0 over [0, 1] with local error controlled to tol (max-norm,
// relative to max(1, |Y|)).
inline Mat2 integrate_linear_dopri5(const std::function<Mat2(double)>& rhs, Mat2 y0,
                                    double tol) {
    // Dormand-Prince coefficients.
    static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
    static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    // 4th-order embedded weights (with the FSAL k7 stage).
    static const double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
                        e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;

    double s = 0.0;
    double h = 0.1;
    Mat2 y = y0;
    int rejected_in_row = 0;
    while (s < 1.0) {
        if (s + h > 1.0) h = 1.0 - s;
        Mat2 k1 = rhs(s) * y;
        Mat2 k2 = rhs(s + c2 * h) * (y + h * (a21 * k1));
        Mat2 k3 = rhs(s + c3 * h) * (y + h * (a31 * k1 + a32 * k2));
        Mat2 k4 = rhs(s + c4 * h) * (y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        Mat2 k5 = rhs(s + c5 * h) * (y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        Mat2 k6 = rhs(s + h) * (y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        Mat2 y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        Mat2 k7 = rhs(s + h) * y5;
        Mat2 y4 = y + h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        double err = max_abs(y5 - y4) / std::max(1.0, max_abs(y5));
        if (err <= tol) {
            s += h;
            y = y5;
            rejected_in_row = 0;
        } else if (++rejected_in_row > 60) {
            throw std::runtime_error("dopri5: repeated step rejection (pole on path?)");
        }
        double fac = 0.9 * std::pow(tol / std::max(err, 1e-300), 0.2);
        h *= std::clamp(fac, 0.2, 5.0);
        if (h < 1e-14) throw std::runtime_error("dopri5: step-size underflow");
    }
    return y;
}

}  // namespace lawson
