#pragma once

#include <string>

#include "convfix/dual.hpp"
#include "convfix/measure.hpp"

namespace convfix {

// All emitted JSON goes through these helpers so numbers carry 17
// significant digits and key order is deterministic.
std::string json_number(double v);
std::string json_escape(const std::string& s);

/// {carrier: <group-spec or "Z">, atoms: [{g|n, re, im}]}
std::string measure_to_json(const ComplexMeasure& m);

/// Inverse of measure_to_json. Group specs are rebuilt through build_group.
ComplexMeasure measure_from_json(const std::string& text);

/// Inline CLI literal `0:0.5, 2:-0.5` (finite) or `-1:0.5, 1:0.5` (Z).
/// Values are reals or complex literals like `0.5+0.5i`.
ComplexMeasure measure_from_literal(const std::string& text, const GroupPtr& g);
ComplexMeasure lattice_measure_from_literal(const std::string& text, LatticeGroup z = {});

/// {carrier, values: [{g, re, im}], certificate: {kind, norm}} on finite
/// carriers; {carrier: "Z", atoms: [{re, im, theta}], certificate} on Z.
std::string dual_to_json(const DualFunction& d);

/// Dual-function literal: `char:k` (the k-th character of an abelian
/// carrier, chi_k(j) = exp(2 pi i k j / n) on cyclic groups) or an inline
/// value list `g:re+imi, ...`.
DualFunction dual_from_literal(const std::string& text, const GroupPtr& g);

std::uint64_t digest_of(const std::string& canonical_inputs);

}  // namespace convfix
