#pragma once

#include <cstddef>
#include <string>

// Row update kernels for the explicit road–field stencil.
//
// One call updates one grid row of length n (a road line or a field row at
// fixed y) as
//
//   out[i] = center·m[i] + lateral·(m[i−1] + m[i+1]) + below·b[i]
//          + above·a[i] + source·s[i] + react·(m[i]·(1 − m[i]))
//
// with mirror ghosts m[−1] = m[1], m[n] = m[n−2] (homogeneous Neumann in x).
// `above` and `source` may be null, in which case their term is skipped.
// Every variant evaluates the terms in exactly this order without fused
// multiply-adds, so all ISAs produce bitwise identical rows.

namespace roadfield::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string to_string(Isa isa);

/// True if this build contains the variant and the running CPU supports it.
bool isa_available(Isa isa);

/// Widest available variant.
Isa best_isa();

/// Variant used by default: ROADFIELD_ISA (scalar | avx2 | neon) if set and
/// available, otherwise best_isa().
Isa active_isa();

enum class RowReaction { None, Logistic };

struct RowCoeffs {
    double center = 0.0;
    double lateral = 0.0;
    double below = 0.0;
    double above = 0.0;
    double source = 0.0;
    double react = 0.0;
};

struct RowArgs {
    const double* mid = nullptr;
    const double* below = nullptr;
    const double* above = nullptr;
    const double* source = nullptr;
    double* out = nullptr;
    std::size_t n = 0;  ///< must be ≥ 2
    RowCoeffs k;
    RowReaction reaction = RowReaction::None;
    double bound = 0.0;
};

/// Each returns true iff every output is finite and ≤ args.bound.
bool update_row_scalar(const RowArgs& args);
bool update_row_avx2(const RowArgs& args);
bool update_row_neon(const RowArgs& args);

bool update_row(Isa isa, const RowArgs& args);

}  // namespace roadfield::kernels
