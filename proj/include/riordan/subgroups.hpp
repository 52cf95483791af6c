#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "riordan/involutions.hpp"

namespace riordan {

enum class SubgroupKind { Derivative, HittingTime, Lagrange, Bell, Reciprocal, Stabilizer, Appell, Bcn };

// Names one of the classical subgroups of the Riordan group, with its
// parameters: r for Reciprocal, the series f for Stabilizer, (c, n) for Bcn.
struct SubgroupTag {
  SubgroupKind kind = SubgroupKind::Lagrange;
  long r = 0;
  std::optional<Fps> stabilizer_series;
  std::string stabilizer_source;  // expression text, kept for printing
  Rational c;
  long n = 0;

  static SubgroupTag simple(SubgroupKind kind);
  static SubgroupTag reciprocal(long r);
  static SubgroupTag stabilizer(Fps f, std::string source = {});
  static SubgroupTag bcn(Rational c, long n);
};

// CLI form: derivative, hitting-time, lagrange, bell, reciprocal:r=2,
// stabilizer:f=<expr>, appell, bcn:c=<rat>,n=<int>. Stabilizer series are
// evaluated at `order`.
SubgroupTag parse_subgroup_tag(std::string_view text, std::size_t order);
std::string to_string(const SubgroupTag& tag);

// Extra seed degrees needed for an exact element at a given order: tags whose
// g-part involves h' or t/h need h through degree N+1.
std::size_t seed_order_excess(const SubgroupTag& tag);

// Builds the tagged element from a seed series h at the requested order.
// Composition-seeded tags need h(0) = 0, h'(0) != 0; Bell and Appell need
// h(0) != 0; Bcn ignores h. The seed must have order >= order + excess.
RiordanPair construct(const SubgroupTag& tag, const Fps& seed, std::size_t order);
RiordanPair construct(const SubgroupTag& tag, const Fps& seed);

// Exact relational check between g and f. For Derivative, HittingTime and
// Reciprocal the top coefficient of g depends on f_{N+1} and is unconstrained.
bool is_member(const SubgroupTag& tag, const RiordanPair& p);

// Involution test by the subgroup's own characterization; throws NotMember.
bool is_subgroup_involution(const SubgroupTag& tag, const RiordanPair& p);

enum class ConjugatorStatus { Found, InfeasibleInSubgroup };

struct InfeasibilityCertificate {
  std::size_t degree = 0;
  std::string reason;
};

struct ConjugatorResult {
  ConjugatorStatus status = ConjugatorStatus::Found;
  int target_sign = 1;
  std::optional<ConjugacyWitness> witness;          // in-subgroup, when Found
  std::optional<InfeasibilityCertificate> certificate;
  std::optional<ConjugacyWitness> outside_witness;  // unrestricted, when infeasible
  std::vector<std::string> log;
};

// The classical target: M = (1, -t) for every tag except Bell, whose nonscalar
// involutions all have diagonal -1, 1, -1, ... and can only reach -M.
int default_target_sign(const SubgroupTag& tag);

// Looks for U in the subgroup with U^{-1} p U = (sign, -t). `p` must be a
// nonscalar involution in the subgroup.
ConjugatorResult subgroup_conjugator(const SubgroupTag& tag, const RiordanPair& p,
                                     std::optional<int> target_sign = std::nullopt);

struct StabilizerParityReport {
  bool m_in_stabilizer = false;        // f(t) / f(-t) = 1
  bool minus_m_in_stabilizer = false;  // f(t) / f(-t) = -1
  Fps ratio;                           // f(t) / f(-t)
};

StabilizerParityReport stabilizer_parity_involutions(const Fps& f);

}  // namespace riordan
