#pragma once

#include "hurwitz/tree.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hurwitz {

enum class LevelCase { L1_MAX, L1_SUB, CASE2, CASE3a, CASE3b, CASE3c, CASE3d, FAIL };
std::string_view level_case_name(LevelCase c);

struct LevelPairVerdict {
    LevelCase tag = LevelCase::FAIL;
    std::string reason;
    std::vector<std::string> checked;
    bool ok() const { return tag != LevelCase::FAIL; }
};

LevelPairVerdict classify_level_pair(int p, const Rational& depth_lo, const DifferentialForm& omega_lo,
                                     const Rational& depth_hi, const DifferentialForm& omega_hi);
// First level of a tower: maximal depth needs a logarithmic form, smaller depths an exact one.
LevelPairVerdict classify_level_one(int p, const Rational& depth, const DifferentialForm& omega);

// Image of a place of the lower tree: a vertex or a place of the upper tree.
struct PlaceLocus {
    std::optional<std::string> vertex;
    std::optional<RationalPlace> place;
};

struct VertexMap {
    std::vector<std::pair<std::string, std::string>> vertices;
    std::vector<std::pair<std::string, std::string>> leaves;
    std::vector<std::pair<RationalPlace, PlaceLocus>> places;
};

ValidationReport check_extension(const HurwitzTree& lo, const HurwitzTree& hi, const VertexMap& map);

enum class CartierVariant { FIXED_PLUS, SECTION };

struct SolverOptions {
    // Only accept new poles that are distinct points of the field.
    bool split_only = false;
    std::uint64_t ceiling = 10'000'000;
    unsigned workers = 1;
    // Pole of omega_prev receiving order p*l - p + 1 in the SECTION recipe; default the least pole.
    std::optional<Elem> first_pole;
};

struct SolverStats {
    std::uint64_t family_size = 0;
    std::uint64_t candidates = 0;
    std::uint64_t solutions = 0;
};

// omega_prev = c dx / prod (x - e_j)^l_j. N = m_n - m_prev new simple poles with
// m_prev = ord_inf(omega_prev) + 1. Throws SearchFailed when the reduced search
// family exceeds the ceiling.
std::optional<DifferentialForm> solve_cartier(const DifferentialForm& omega_prev, int m_n, CartierVariant variant,
                                              const SolverOptions& options = {}, SolverStats* stats = nullptr);

// eps1 + eps2 = eps0 and (pC - p) eps0 = (pC - 2p + l') eps2 + (pC - p + l) eps1.
std::pair<Rational, Rational> partition_trunk(int conductor_prev, int p, int l, int l_prime, const Rational& eps0);
// eps1 + eps2 = eps0 and rate*eps0 = upper*eps1 + lower*eps2.
std::pair<Rational, Rational> split_segment(const Rational& rate, int upper_slope, int lower_slope, const Rational& eps0);

// Least a with a^(p(m+1)) = e / c^p. Throws NoRootInField(p(m+1)).
Elem solve_equidistant_parameter(const FieldPtr& field, Elem e, Elem c, int m);

enum class TargetMode { MINIMAL, GENERAL };

struct ExtensionTarget {
    TargetMode mode = TargetMode::MINIMAL;
    int l = 0;
    // Mode and l follow from the conductor or the root reduction type.
    bool derive_mode = false;
    // Conductor of the extended tree; derived from the mode when absent.
    std::optional<int> conductor;
    std::optional<ReductionType> root_reduction_type;
    std::optional<DifferentialForm> root_form;
};

struct ExtendOptions {
    std::uint64_t ceiling = 10'000'000;
    unsigned workers = 1;
    // Retry over F_{p^k} for multiples k of the input degree up to this bound; 0 disables.
    int max_field_degree = 0;
};

struct ExtensionResult {
    HurwitzTree tree;
    VertexMap map;
    // Input tree, re-expressed over the field of the output.
    HurwitzTree source;
    std::vector<std::string> log;
};

ExtensionResult extend_tree(const HurwitzTree& prev, const ExtensionTarget& target, const ExtendOptions& options = {});

HurwitzTree embed_tree(const HurwitzTree& t, const FieldEmbedding& emb);
DifferentialForm embed_form(const DifferentialForm& w, const FieldEmbedding& emb);
Poly embed_poly(const Poly& f, const FieldEmbedding& emb);
ReductionType embed_reduction_type(const ReductionType& rt, const FieldEmbedding& emb);

}  // namespace hurwitz
