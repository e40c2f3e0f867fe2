#pragma once

namespace framedrag {

// Exact Racah-formula Wigner 3-j for small angular momenta (oracle regime,
// |j| <= 60, integers or half-integers). Selection-rule violations return 0.
double wigner3j_oracle(double j1, double j2, double j3,
                       double m1, double m2, double m3);

// Closed forms for the dipole triples (1, l, l+1), cancellation-safe at any l.
// branch is m' - m of the paired shell-(l+1) state:
//   +1 -> (1 l l+1; -1 -m m+1)
//    0 -> (1 l l+1;  0 -m m)
//   -1 -> (1 l l+1; +1 -m m-1)
// Sign carries (-1)^l parity of the stored double (exact via fmod).
double wigner3j_dipole(double l, int branch, double m);

// (1 l l+1; 0 0 0)
double wigner3j_dipole_000(double l);

} // namespace framedrag
