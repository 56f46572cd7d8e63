#pragma once

// Structural checks on computed runs of the wall dynamics.

#include "a2bill/dynamics.hpp"

#include <string>
#include <vector>

namespace a2bill {

enum class CheckStatus { pass, fail, expected_fail };

std::string to_string(CheckStatus s);

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::pass;
    std::size_t checked = 0;
    /// At most a handful of offending items, rendered for humans.
    std::vector<std::string> witnesses;
};

struct CheckReport {
    std::int64_t ell = 0;
    std::vector<std::int64_t> seed_ks;
    int iterations = 0;
    Mode mode = Mode::corrected;
    std::vector<CheckResult> results;

    /// True iff no result has status fail.
    bool ok() const;
    const CheckResult* find(const std::string& name) const;
    std::string to_text() const;
};

/// Expected operation applied to the seeds of Q_{j-1} to produce Q_j.
Operation expected_operation(int j, std::int64_t ell);

/// Exponent carried by the seeds of Q_j.
std::int64_t expected_seed_exponent(int j, std::int64_t ell);

/// Image of Y_j under (mu, n(v^i)) -> (mu + (k-j) ell w1, (n + 2(k-j) ell)(v^i)).
std::map<PointKey, BigInt> shift_run(const PointMultiset& y, std::int64_t shift_k, std::int64_t ell);

/// Runs every check on already computed runs (all with the same ell, N and mode).
CheckReport check_runs(const std::vector<DynamicsRun>& runs);

/// Computes the runs for `seed_ks` and checks them.
CheckReport run_invariant_suite(std::int64_t ell, const std::vector<std::int64_t>& seed_ks, int iterations,
                                Mode mode, unsigned jobs = 1);

} // namespace a2bill
