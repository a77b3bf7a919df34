#pragma once

// Exact-arithmetic audit of the published (p,q) identities and algorithm
// normalizations. Each identity is checked instance by instance (per degree,
// and per index where it has one). When the published form fails, a
// correcting monomial p^a q^b with |a|, |b| <= max(1, n^2) is searched for;
// anything outside that space is reported as a failure.

#include "pqbezier/pq_core.hpp"
#include "pqbezier/scalar.hpp"

#include "json.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pqbezier {

enum class Verdict { pass_as_printed, pass_with_correction, fail, not_applicable };

const char* to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

/// Smallest instance at which the published form disagrees.
struct Witness {
    int n = 0;
    std::optional<int> k;
    Rational p;
    Rational q;
    std::optional<Rational> t;
    std::optional<Rational> x;
    std::optional<Rational> r;

    friend bool operator==(const Witness&, const Witness&) = default;
};

/// Correction p^{p_exponent} q^{q_exponent} fitted at one instance.
struct FittedFactor {
    int n = 0;
    std::optional<int> k;
    int p_exponent = 0;
    int q_exponent = 0;

    friend bool operator==(const FittedFactor&, const FittedFactor&) = default;
};

struct AuditEntry {
    std::string identity_id;
    int degree_min = 0;
    int degree_max = 0;
    Verdict verdict = Verdict::pass_as_printed;
    std::optional<std::string> correction;
    std::optional<Witness> witness;
    std::vector<FittedFactor> factors;  // non-trivial fits only
    int instances = 0;
    int not_applicable = 0;

    friend bool operator==(const AuditEntry&, const AuditEntry&) = default;
};

struct AuditReport {
    int n_max = 0;
    std::vector<PqParams<Rational>> params;
    std::vector<AuditEntry> entries;  // sorted by identity_id

    const AuditEntry* find(const std::string& id) const;
    bool has_failures() const;

    friend bool operator==(const AuditReport&, const AuditReport&) = default;
};

class AuditModeError : public std::invalid_argument {
public:
    AuditModeError() : std::invalid_argument("audit requires exact arithmetic") {}
};

/// (2,1), (3,2), (3/2,1/2), (1,1/2), (5/4,3/4)
std::vector<PqParams<Rational>> default_audit_params();

AuditReport audit_all(int n_max, std::span<const PqParams<Rational>> params_list);

/// Rejected: identity verdicts must come from exact evaluation.
[[noreturn]] void audit_all(int n_max, std::span<const PqParams<double>> params_list);

/// Checks only one identity (same machinery as audit_all).
AuditEntry audit_identity(const std::string& identity_id, int n_max,
                          std::span<const PqParams<Rational>> params_list);

/// Identity ids in report order.
std::vector<std::string> audit_identity_ids();

nlohmann::json to_json(const AuditReport& report);
AuditReport audit_report_from_json(const nlohmann::json& j);
std::string to_text(const AuditReport& report);

}  // namespace pqbezier
