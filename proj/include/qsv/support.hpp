/*
  End-to-end support variety pipeline: the wall system Phi_lambda, a
  W-conjugate standard subsystem Phi_J with J inside the simple roots, and
  the orbit descriptor (J, conjugator, dimension) for irreducible and Weyl
  modules in quantum and prime-parameter modes.
*/
#ifndef QSV_SUPPORT_HPP
#define QSV_SUPPORT_HPP

#include <utility>
#include <vector>

#include "qsv/gendim.hpp"
#include "qsv/root_system.hpp"

namespace qsv {

enum class ModuleKind { Irreducible, Weyl };

struct SupportVarietyDescriptor {
  std::vector<int> J;        // canonical subset of Pi, 0-based sorted indices
  WeylElement conjugator;    // w with w(Phi_J) = Phi_lambda
  std::vector<int> conjugator_word;  // reduced word of the conjugator
  long long dimension = 0;   // |Phi| - |Phi_J|
  ParamMode mode = ParamMode::Quantum;
  ModuleKind kind = ModuleKind::Irreducible;
  bool conditional_on_LCF = false;  // prime mode rests on the character formula
};

// J <= Pi and w in W with w(Phi_J) = Phi_subset.  J is canonical: the
// lexicographically least index set among all W-conjugates inside Pi.
// Throws InvariantViolationError when no conjugate exists (the input was
// not a wall system under the standing hypotheses).
std::pair<std::vector<int>, WeylElement> find_J(const RootSystem& rs,
                                                const PhiSubset& phi);

SupportVarietyDescriptor irreducible_support(const RootSystem& rs,
                                             const Weight& la, long long ell,
                                             ParamMode mode);

SupportVarietyDescriptor weyl_module_support(const RootSystem& rs,
                                             const Weight& la, long long ell);

// True iff Phi_J and Phi_K are W-conjugate (brute force over W).
bool conjugacy_invariance_check(const RootSystem& rs,
                                const std::vector<int>& J,
                                const std::vector<int>& K);

// True iff every weight of the combination has a W-conjugate wall system
// (equivalently: the same canonical J).
bool linkage_check(const RootSystem& rs, const CharacterCombination& comb,
                   long long ell);

}  // namespace qsv

#endif  // QSV_SUPPORT_HPP
