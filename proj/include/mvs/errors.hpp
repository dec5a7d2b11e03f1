// Error hierarchy shared by all modules.
//
// Every failure that is part of an operation's contract maps to one of these
// types so the CLI can translate it into a stable exit code:
//
//   parse_error        -> exit 4 (malformed JSON / flags / rational literals)
//   precondition_error -> exit 2 (violated operation precondition)
//   domain_error       -> exit 2 (argument outside the documented domain)
//   descriptor_error   -> exit 2 (structurally invalid system descriptor)
//   contract_error     -> exit 2 (inconsistent sizes/multiplicities)
//   budget_exceeded    -> exit 2 (exact materialization passed the size budget)
//
// "Unknown" verdicts are ordinary return values, not exceptions (exit 3).

#ifndef MVS_ERRORS_HPP
#define MVS_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mvs {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input cannot be read at all (JSON, flags, "p/q" literals).
struct parse_error : error {
  using error::error;
};

// A documented precondition of an operation does not hold.
struct precondition_error : error {
  using error::error;
};

// An argument is outside the operation's domain (e.g. product term > 1).
struct domain_error : error {
  using error::error;
};

// A SystemDescriptor violates its structural invariants.
struct descriptor_error : error {
  using error::error;
};

// Sizes / multiplicities passed to an operation are inconsistent.
struct contract_error : error {
  using error::error;
};

// Exact materialization of a synthesized sequence would exceed the configured
// per-term bit budget.  The greedy constructions double their bit size per
// level, so deep prefixes are physically unrepresentable; this error reports
// how far materialization got.
struct budget_exceeded : error {
  budget_exceeded(const std::string& what, std::size_t index_reached,
                  std::size_t bits_needed)
      : error(what), index_reached(index_reached), bits_needed(bits_needed) {}
  std::size_t index_reached;  // last index that was materialized
  std::size_t bits_needed;    // bit size that tripped the budget
};

}  // namespace mvs

#endif  // MVS_ERRORS_HPP
