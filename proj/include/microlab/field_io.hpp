#pragma once

#include <string>

#include "microlab/dyadic.hpp"
#include "microlab/grid.hpp"
#include "microlab/symbols.hpp"

namespace microlab {

// Field files are a one-line JSON header
//   {"dim":d,"shape":[...],"dtype":"f64"|"c128","layout":"row-major"}
// followed by the raw little-endian payload.  Real-tagged fields are stored
// as f64 (real parts only); everything else as interleaved c128.
void save_field(const SampledField& f, const std::string& path);
SampledField load_field(const std::string& path);

// Plain CSV (index column, coordinate, then value columns) for 1D fields.
std::string field_csv(const SampledField& f);

// Symbol manifests are JSON: {"m": order, "principally_real": flag,
// "terms": [{"alpha": [...], "field": "relative path"}]}.  Term fields live
// in sibling files; save_symbol derives their names from the manifest path.
void save_symbol(const CoefficientSymbol& p, const std::string& manifest_path);
CoefficientSymbol load_symbol(const std::string& manifest_path);

// Shell-weight table by radius, one row (j, |xi|, psi_j) per shell and
// integer radius, for eyeballing the partition.
std::string partition_csv(const DyadicPartition& P);

}  // namespace microlab
