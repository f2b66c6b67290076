/**
 * @file scenarios.hpp
 * @brief Fluid scenarios, characteristic scales and derived dimensionless
 *        numbers / power factors for micron-scale shape-changing robots.
 *
 * All quantities are SI. Formatting (pW, micrometres, ...) is left to the
 * presentation layer.
 */
#ifndef MORPHFLOW_SCENARIOS_HPP
#define MORPHFLOW_SCENARIOS_HPP

#include <cmath>
#include <stdexcept>
#include <string>

namespace morphflow {

/// Boltzmann constant [J/K] (2019 SI exact value).
inline constexpr double k_boltzmann = 1.380649e-23;

/// Free energy made available by oxidizing one glucose molecule [J].
/// Overridable where a different metabolic bookkeeping is wanted.
inline constexpr double default_glucose_energy = 4.77e-18;

/// Fraction of the glucose energy assumed convertible to mechanical work.
inline constexpr double default_glucose_efficiency = 0.5;

/// Sliding friction coefficient for lubricated solid-solid contact
/// [kg/(m^2 s)]: tangential stress per unit relative speed.
inline constexpr double default_sliding_friction = 1.0e3;

/**
 * A Newtonian fluid environment.
 *
 * Invariant: kinematic_viscosity == dynamic_viscosity / density to machine
 * precision (the constructor computes it; the checked factory verifies it).
 */
struct FluidScenario {
    double density;              ///< rho [kg/m^3]
    double dynamic_viscosity;    ///< eta [Pa s]
    double kinematic_viscosity;  ///< nu  [m^2/s]
    std::string name;

    FluidScenario(double rho, double eta, std::string label = "")
        : density(rho), dynamic_viscosity(eta),
          kinematic_viscosity(eta / rho), name(std::move(label)) {
        if (!(rho > 0.0) || !(eta > 0.0))
            throw std::invalid_argument("FluidScenario: density and viscosity must be positive");
    }
};

/// Water-like environment: eta = 1e-3 Pa s, rho = 1000 kg/m^3.
inline FluidScenario low_viscosity_scenario() { return {1000.0, 1.0e-3, "low"}; }

/// High-viscosity environment (mucus-like): eta = 10 Pa s, rho = 1000 kg/m^3.
inline FluidScenario high_viscosity_scenario() { return {1000.0, 10.0, "high"}; }

/**
 * Characteristic scales of one robot motion: size d0 [m], speed v0 [m/s]
 * and duration T [s] of the shape change.
 */
struct CharacteristicScales {
    double d0;  ///< characteristic size [m]
    double v0;  ///< characteristic speed [m/s]
    double T;   ///< motion duration [s]

    CharacteristicScales(double size, double speed, double duration)
        : d0(size), v0(speed), T(duration) {
        if (!(size > 0.0) || !(speed > 0.0) || !(duration > 0.0))
            throw std::invalid_argument("CharacteristicScales: all scales must be positive");
    }
};

/// Reynolds number v0 d0 / nu.
inline double reynolds(const CharacteristicScales& s, const FluidScenario& f) {
    return s.v0 * s.d0 / f.kinematic_viscosity;
}

/// Womersley number d0 / sqrt(nu T): unsteadiness of the motion.
inline double womersley(const CharacteristicScales& s, const FluidScenario& f) {
    return s.d0 / std::sqrt(f.kinematic_viscosity * s.T);
}

/// Viscous power scale eta d0 v0^2 [W]; multiply by h_fluid for actual power.
inline double fluid_power_factor(const CharacteristicScales& s, const FluidScenario& f) {
    return f.dynamic_viscosity * s.d0 * s.v0 * s.v0;
}

/// Internal sliding power scale k_friction d0^2 v0^2 [W].
inline double internal_power_factor(const CharacteristicScales& s,
                                    double k_friction = default_sliding_friction) {
    return k_friction * s.d0 * s.d0 * s.v0 * s.v0;
}

/**
 * Number of glucose molecules delivering mechanical energy E [J] at the
 * given conversion efficiency.
 */
inline double glucose_equivalent(double energy,
                                 double glucose_energy = default_glucose_energy,
                                 double efficiency = default_glucose_efficiency) {
    if (!(energy >= 0.0)) throw std::invalid_argument("glucose_equivalent: energy must be >= 0");
    if (!(glucose_energy > 0.0) || !(efficiency > 0.0) || efficiency > 1.0)
        throw std::invalid_argument("glucose_equivalent: bad constants");
    return energy / (efficiency * glucose_energy);
}

/// Stokes-Einstein translational diffusion coefficient of a sphere [m^2/s].
inline double stokes_einstein_diffusion(double radius, const FluidScenario& f,
                                        double temperature = 310.0) {
    if (!(radius > 0.0) || !(temperature > 0.0))
        throw std::invalid_argument("stokes_einstein_diffusion: radius/temperature must be positive");
    constexpr double six_pi = 6.0 * 3.14159265358979323846;
    return k_boltzmann * temperature / (six_pi * f.dynamic_viscosity * radius);
}

/// RMS Brownian displacement sqrt(6 D t) over a time interval t [m].
inline double brownian_displacement(double diffusion, double time) {
    if (!(diffusion >= 0.0) || !(time >= 0.0))
        throw std::invalid_argument("brownian_displacement: arguments must be >= 0");
    return std::sqrt(6.0 * diffusion * time);
}

/// Mechanical energy of one motion together with its fuel bookkeeping.
struct EnergyQuote {
    double energy;            ///< [J]
    double fluid_fraction;    ///< share dissipated in the fluid, in [0,1]
    double glucose_molecules; ///< glucose equivalent count
};

}  // namespace morphflow

#endif  // MORPHFLOW_SCENARIOS_HPP
