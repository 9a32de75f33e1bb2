#pragma once

// Serialization of censuses, estimates and paths. Output depends only on the
// values serialized, never on worker counts or timing.

#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "gslab/manipulation.hpp"
#include "gslab/paths.hpp"
#include "gslab/rational.hpp"

namespace gslab {

nlohmann::json rational_json(const Rational& r);
nlohmann::json estimate_json(const Estimate& e);

// {rule, q, n, mode, total, epsilon, neutral, applicable, fractions, bounds,
//  pass, formulas, seed?, samples?}
nlohmann::json census_json(const ManipulationCensus& c);

// One row per profile in encode order: profile, winner, manipulable, r2, r3, r4.
void write_profile_flags_csv(std::ostream& out, const ManipulationIndex& index);

nlohmann::json inverse_census_json(const InverseImageCensus& c);
// Columns vertex, i, count; i = "all" for |Gamma^{-1}(z)|.
void write_inverse_census_csv(std::ostream& out, const InverseImageCensus& c);

// One vertex per line; part annotations as "#" comment lines.
template <class V>
void write_path(std::ostream& out, const Path<V>& p, const std::string& title) {
  out << "# " << title << "\n# length " << p.length() << "\n";
  for (std::size_t k = 0; k < p.vertices.size(); ++k) {
    for (const auto& part : p.parts)
      if (part.first == k)
        out << "# part " << part.label << " (vertices " << part.first << ".." << part.last << ")\n";
    out << to_string(p.vertices[k]) << "\n";
  }
}

}  // namespace gslab
