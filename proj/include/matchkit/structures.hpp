#pragma once

// Graph views of stable and popular matching structure.

#include <string_view>

#include "matchkit/graph.hpp"
#include "matchkit/model.hpp"

namespace matchkit {

enum class StructureKind { sm_rotation_poset, sm_rotation_digraph, sm_hasse, sr_rotation_poset, cha_switching };

std::string_view to_string(StructureKind k);
/// Accepts the hyphenated names, e.g. "sm-hasse". Throws DomainError otherwise.
StructureKind parse_structure_kind(std::string_view name);

/// The roommates instance admits no stable matching.
class UnsolvableError : public DomainError {
public:
    using DomainError::DomainError;
};

/// The house allocation instance admits no popular matching.
class NoPopularMatchingError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Builds the requested structure. SM kinds need strict complete lists and
/// at most `max_side` agents per side (BudgetError beyond). A kind that
/// does not fit the instance raises InapplicableError.
StructureGraph structural_graph(const Instance& inst, StructureKind kind, int max_side = 12);

}  // namespace matchkit
