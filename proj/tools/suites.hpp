#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "json.hpp"
#include "polar_ekr/ekr.hpp"
#include "polar_ekr/graph.hpp"
#include "polar_ekr/search.hpp"

namespace polar::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.3.0";
inline constexpr const char* kOrdering = "rref-lex-ids/top-dimension-major-flags/1";

Json number(const mpz_class& x);
Json number(const mpq_class& x);
Json space_json(const Geometry& g);
/// {tool, version, schema, ordering, space}
Json header(const Geometry& g, const std::string& schema);

Json space_summary(const Geometry& g);

/// Closed forms against enumeration; dimensions of enumerated objects up to max_dim.
Json count_table(const Geometry& g, int max_dim);

/// Certifies the spectrum (attaching it to the graph) and compares with the closed forms.
Json spectrum_section(const Geometry& g, OppositionGraph& graph);

Json quotient_section(const Geometry& g, const OppositionGraph& chambers, const OppositionGraph& flags);

/// Orthogonality of every chi_F, v_S, v_M to the minimal eigenspace and the sum identities.
Json antidesign_section(const Geometry& g, const OppositionGraph& graph, bool rows);

/// Pairings of the two chamber blow-ups (and family b on generators) with every antidesign.
Json intersection_section(const Geometry& g, const OppositionGraph& chambers, const OppositionGraph& generators);

/// Ratio bound from the attached spectrum, the closed form, or a certified spectrum.
std::optional<std::size_t> ratio_bound_of(const Geometry& g, const OppositionGraph& graph);

Json search_section(const Geometry& g, const OppositionGraph& graph, const SearchOptions& options,
                    const std::optional<EKRSet>& seed, bool timings, bool witness);

Json xyz_section(const Geometry& g, const EKRSet& f);
Json structure_section(const Geometry& g);
Json spinor_section(const Geometry& g);

/// Example set of the given family, blown up to `type` when needed.
EKRSet example_for(const Geometry& g, ExampleFamily family, std::uint32_t base, const FlagType& type);

}  // namespace polar::cli
