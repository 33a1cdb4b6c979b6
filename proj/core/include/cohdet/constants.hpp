/**
 * Physical constants (SI, CODATA 2018) used throughout the detector model.
 *
 * Values are compile-time constants and are never mutated; every formula in
 * the library pulls from here so that cross-checks between independently
 * coded expressions cannot drift apart.
 */

#pragma once

namespace cohdet {

struct PhysicalConstants {
    double hbar;  // reduced Planck constant, J*s
    double Z0;    // impedance of free space, ohm
    double c0;    // speed of light in vacuum, m/s
    double eps0;  // vacuum permittivity, F/m
    double kB;    // Boltzmann constant, J/K
};

inline constexpr PhysicalConstants constants{
    1.054571817e-34,    // hbar
    376.730313668,      // Z0
    299792458.0,        // c0
    8.8541878128e-12,   // eps0
    1.380649e-23,       // kB
};

inline constexpr double pi = 3.14159265358979323846;

}  // namespace cohdet
