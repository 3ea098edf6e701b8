#pragma once

namespace fracspec {

// Gamma function via the Lanczos approximation (g=7, 9 terms), with the
// reflection formula below 0.5 so small and negative non-integer
// arguments keep full accuracy. Relative error is well under 1e-13 in
// double precision.
double gamma_lanczos(double x);

// Confluent hypergeometric 1F1(a, b, z).
//  - z >= 0: power series, term-ratio stopping.
//  - z < 0 moderate: Kummer transform e^z 1F1(b-a, b, -z), which avoids
//    the catastrophic cancellation of the alternating direct series.
//  - z << 0: large-argument asymptotic series (the Kummer route would
//    overflow e^{-z}).
// Throws NumericError if the series fails to converge within the cap.
double hyp1f1(double a, double b, double z);

}  // namespace fracspec
