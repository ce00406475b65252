#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "constructive/errors.hpp"

namespace constructive::logic {

enum class Conn { atom, falsum, neg, conj, disj, impl, iff };

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Immutable propositional AST. `falsum` never appears in parsed input; the
/// prover introduces it when it reads ~a as a -> falsum.
class Formula {
  public:
    Conn conn;
    std::string name;  // atoms only
    FormulaPtr lhs, rhs;

    Formula(Conn c, std::string n, FormulaPtr l, FormulaPtr r)
        : conn(c), name(std::move(n)), lhs(std::move(l)), rhs(std::move(r)) {}
};

FormulaPtr atom(std::string name);
FormulaPtr falsum();
FormulaPtr neg(FormulaPtr a);
FormulaPtr conj(FormulaPtr a, FormulaPtr b);
FormulaPtr disj(FormulaPtr a, FormulaPtr b);
FormulaPtr impl(FormulaPtr a, FormulaPtr b);
FormulaPtr iff(FormulaPtr a, FormulaPtr b);

bool structurally_equal(const FormulaPtr& a, const FormulaPtr& b);

/// Minimal-parenthesis rendering: ~ binds tightest, then & | -> <->;
/// & and | associate left, -> and <-> right.
std::string print_formula(const FormulaPtr& f);

/// Sorted distinct atom names.
std::vector<std::string> atoms_of(const FormulaPtr& f);

/// Grammar: atoms [a-z][a-z0-9_]*, connectives ~ & | -> <->, parentheses.
/// Throws ParseError with a byte position.
FormulaPtr parse_formula(std::string_view text);

/// Truth-table validity. At most 24 atoms (ResourceError beyond).
bool classical_valid(const FormulaPtr& f);

/// A falsifying assignment if one exists: atom name -> value.
std::optional<std::map<std::string, bool>> classical_countermodel(const FormulaPtr& f);

/// Rewrites every disjunction and implication into the negation/conjunction
/// forms p|q ~> ~(~p & ~q), p->q ~> ~(p & ~q); <-> goes through its two
/// implications first. Output contains only atoms, ~ and &.
FormulaPtr expand_classical_abbreviations(const FormulaPtr& f);

/// Finite rooted Kripke model: world 0 is the root, `leq[i][j]` says world j
/// is reachable from (above) world i, valuation maps an atom to the set of
/// worlds forcing it.
struct KripkeModel {
    std::size_t worlds = 0;
    std::vector<std::vector<bool>> leq;
    std::map<std::string, std::vector<bool>> valuation;
};

/// Independent countermodel checker: the relation must be a rooted preorder,
/// the valuation monotone, and the root must fail the formula under the
/// forcing relation. Returns false (with a reason) instead of throwing, so
/// it can serve as an oracle for models from any source.
bool verify_countermodel(const KripkeModel& model, const FormulaPtr& f,
                         std::string* reason = nullptr);

std::string format_countermodel(const KripkeModel& model);

struct IntuitionisticResult {
    bool valid;
    std::optional<KripkeModel> countermodel; // best effort when invalid
};

/// Decides derivability in intuitionistic propositional logic by
/// terminating contraction-free sequent-calculus search. On failure a small
/// countermodel is searched for (classical assignments first, then small
/// rooted frames); emission is best effort, the verifier above is the
/// ground truth for whatever is emitted.
IntuitionisticResult intuitionistic_valid(const FormulaPtr& f,
                                          bool want_countermodel = false);

/// Evidence-bearing outcome of a bounded search over naturals.
class SearchOutcome {
  public:
    enum class Kind { known, refuted, unknown };

    static SearchOutcome known(std::uint64_t witness);
    static SearchOutcome refuted(std::string marker);
    static SearchOutcome unknown(std::uint64_t budget_spent);

    Kind kind() const { return kind_; }
    std::uint64_t witness() const;      // requires kind() == known
    std::uint64_t budget_spent() const; // requires kind() == unknown
    const std::string& refutation() const;

  private:
    Kind kind_;
    std::uint64_t value_ = 0;
    std::string marker_;
};

/// Smallest k < bound with pred(k), as Known(k). Exhaustion yields Unknown
/// unless the caller vouches that [0, bound) is the whole search space
/// (`finite_domain`), in which case it is a Refuted.
SearchOutcome bounded_search(const std::function<bool(std::uint64_t)>& pred,
                             std::uint64_t bound, bool finite_domain = false);

} // namespace constructive::logic
