#pragma once

// Two-dimensional immersed-boundary jellyfish: a semi-elliptical bell of
// fiber nodes (springs along the arc, beams holding the rest curvature,
// muscle springs across the bell margin with a periodically shrinking rest
// length) swimming in a doubly periodic viscous fluid, plus a row of
// tethered target points acting as a wall near the top of the domain.

#include <filesystem>
#include <string>
#include <vector>

#include "convlab/field.hpp"
#include "convlab/ib.hpp"

namespace convlab {

struct SimConfig {
    int N = 128;                        // grid points per side
    double L = 8.0;                     // domain side length
    double Re = 150.0;                  // target Reynolds number
    double f = 0.8;                     // contraction frequency
    double char_length = 1.0;           // bell width at rest
    double rho = 1000.0;                // fluid density
    double dt = 0.0;                    // time step; <= 0 selects automatically
    double n_cycles = 2.0;              // contraction cycles to run
    int output_every = 0;               // steps between samples; <= 0 -> ~50 per cycle
    double k_spring_scale = 1.0e6;      // arc spring stiffness = scale / ds
    double k_beam_scale = 100.0;        // beam stiffness = scale / ds^4
    double k_target = 2.0e5;            // wall tether stiffness
    double k_muscle = 1.0e5;            // muscle stiffness per mirror pair (0 = no actuation)
    double contraction_fraction = 0.5;  // rest length at peak activation, as a fraction
    double bell_a = 0.5;                // bell semi-axis, horizontal
    double bell_b = 0.35;               // bell semi-axis, vertical
    double ds_factor = 0.5;             // node spacing target, as a fraction of h
    std::string output_dir;             // empty = keep results in memory only

    double mu() const;            // rho * f * char_length^2 / Re
    double cycle_period() const;  // 1 / f
    void validate() const;        // throws std::invalid_argument on bad values
};

// Resolved stepping plan: the automatic rules pick dt as the largest step
// that both divides the cycle into whole steps and respects
// min(0.1 h / (f * char_length), cycle_period / 1250).
struct RunPlan {
    double dt = 0.0;
    long long steps_per_cycle = 0;
    long long total_steps = 0;
    int output_every = 0;
};
RunPlan resolve_plan(const SimConfig& cfg);

// Reads a config file of `key = value` lines; exactly the SimConfig keys
// (N, L, Re, f, char_length, rho, dt, n_cycles, output_every,
// k_spring_scale, k_beam_scale, k_target, k_muscle, contraction_fraction,
// bell_a, bell_b, ds_factor, output_dir) are accepted; an unknown key is an
// error naming it. Missing keys keep their defaults.
SimConfig load_config(const std::filesystem::path& path);

// Re = rho * char_length * (f * char_length) / mu with mu derived from cfg.
double reynolds(const SimConfig& cfg);
double reynolds(double rho, double frequency, double char_length, double mu);

// Smooth periodic activation (1 - cos(2 pi f t)) / 2 in [0, 1].
double activation(double t, double frequency);

// Rest separation of the widest muscle pair at time t:
// R_max - (R_max - R_min) * a(t) with R_max = 2 * bell_a and
// R_min = contraction_fraction * R_max.
double muscle_rest_length(double t, const SimConfig& cfg);

// Bell plus wall with bookkeeping the simulation needs.
struct BellMesh {
    LagrangianMesh mesh;   // bell nodes first, then the wall row
    int n_bell = 0;        // bell node count
    int apex = 0;          // index of the highest node at t = 0
    int n_muscles = 0;
    double arc_length = 0.0;
};

// Arc-length-uniform semi-elliptical bell (even segment count, exact apex
// node, exact left-right mirror symmetry), springs between neighbors, beams
// over consecutive triples preferring the rest curvature, muscle springs
// between mirror-image margin pairs, and a tethered wall row near the top.
BellMesh build_bell(const SimConfig& cfg);

// Wraps externally loaded geometry (apex = highest node, all nodes counted
// as bell nodes).
BellMesh wrap_loaded_mesh(LagrangianMesh mesh);

struct Snapshot {
    double t = 0.0;
    long long step = 0;
    Field2D u, v;
};

struct SwimRecord {
    std::vector<double> times;
    std::vector<double> bell_top_y;
    std::vector<double> bell_top_speed;  // finite differences of the samples
    std::vector<double> thrust_series;   // mean vertical force density, muscle-bearing nodes
    std::vector<Snapshot> snapshots;     // velocity fields at the sample cadence
    double wall_time_seconds = 0.0;      // stepping loop only, file output excluded
    double dt = 0.0;
    double ds = 0.0;
    int output_every = 0;
    long long steps_per_cycle = 0;
    long long total_steps = 0;
    double cycle_period = 0.0;
    int apex_index = 0;
    double x_drift = 0.0;  // |apex x at end - apex x at start|
    std::vector<std::filesystem::path> written_files;

    double displacement() const;  // final minus initial apex height
};

// Main loop: fiber forces -> spread -> fluid step -> interpolate -> move
// nodes. Samples (including step 0 and the final step) are taken before the
// step so they describe the state at t = step * dt. When output_dir is set,
// writes swim.csv, meta.txt, and VTK snapshots at half-cycle cadence.
SwimRecord run_simulation(const SimConfig& cfg);
SwimRecord run_simulation(const SimConfig& cfg, const BellMesh& bell);

// Least-squares slope of bell_top_y over the record's final two cycles.
double swim_speed(const SwimRecord& record);

struct ThrustError {
    std::vector<double> t;
    std::vector<double> absolute;  // |fine thrust * ds_fine - coarse thrust * ds_coarse|
    std::vector<double> relative;  // absolute / |fine thrust * ds_fine|
    double last_cycle_error = 0.0;  // |difference of last-cycle time averages|
};

// Per-sample comparison of two runs with identical sampling cadence.
ThrustError thrust_error(const SwimRecord& coarse, const SwimRecord& fine);

}  // namespace convlab
