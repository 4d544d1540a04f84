#pragma once

#include <utility>
#include <vector>

#include "loewner/energy.hpp"
#include "loewner/errors.hpp"
#include "loewner/zipper.hpp"

namespace loewner {

struct GeodesicSpec {
    int n_samples = 16;
    // Extra samples at angles pi/(n+1) * 2^-m, m = 1..end_refinement, next to the `to` end.
    int end_refinement = 0;
};

std::vector<Complex> hyperbolic_geodesic(const MapStack& stack, const PrimeEnd& from, const PrimeEnd& to,
                                         const GeodesicSpec& spec = {});

// Adds end refinement until the last vertex is within tol of target (original coordinates).
std::vector<Complex> closing_geodesic(const MapStack& stack, const PrimeEnd& from, const PrimeEnd& to,
                                      int n_samples, Complex target, double tol);

struct LedgerRow {
    int step = 0;
    double t_cursor = 0.0;
    double x = 0.0;
    double y = 0.0;
    double geodesic_hcap = 0.0;
    double joint_hcap = 0.0;
    double energy_prefix = 0.0;
    double energy_eta = 0.0;
    double energy_total = 0.0;
    double cara_distance = 0.0;
};

struct ReversalLedger {
    double initial_energy = 0.0;
    std::vector<LedgerRow> rows;
};

struct ReversalOptions {
    GeodesicSpec geodesic;
    bool track_ledger = true;
    double close_fraction = 1e-3;
    int probe_points = 64;
    // Probe semicircle radius for cara_distance; non-positive means 100 times the chord radius.
    double probe_radius = 0.0;
};

struct ReversalState {
    Chord chord;
    std::vector<double> times;          // capacity time after each element
    std::vector<SlitElement> elements;  // arc-element zip of the chord
    double t_cursor = 0.0;
    std::vector<Complex> eta;
    int step = 0;
    ReversalLedger ledger;
};

struct ReversalError : StepError {
    ReversalError(const std::string& what, ReversalLedger l) : StepError(what), ledger(std::move(l)) {}
    ReversalLedger ledger;
};

ReversalState start_reversal(const Chord& chord, const ReversalOptions& opts = {});
ReversalState local_reversal_step(const ReversalState& state, double eps, const ReversalOptions& opts = {});

struct ReversalResult {
    Chord reversed;
    ReversalLedger ledger;
};

ReversalResult reverse_chord(const Chord& chord, int k, const ReversalOptions& opts = {});

// Elements of the capacity-s prefix of the zip described by (times, elements).
std::vector<SlitElement> capacity_prefix(const std::vector<double>& times, const std::vector<SlitElement>& elements,
                                         double s, std::size_t* full_count = nullptr);

struct CommutationResult {
    double lhs = 0.0;
    double rhs = 0.0;
};

CommutationResult commutation_defect(const CurveSegment& gamma, const CurveSegment& eta,
                                     const EnergyOptions& opts = {});

}  // namespace loewner
