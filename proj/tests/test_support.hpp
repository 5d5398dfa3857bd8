#pragma once

#include "tcaudit/cli.hpp"
#include "tcaudit/fock.hpp"

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace tcaudit::testkit {

inline OperatorMatrix random_hermitian(std::size_t dim, std::mt19937_64& rng)
{
    std::normal_distribution<double> normal(0.0, 1.0);
    auto m = OperatorMatrix::zeros(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m(i, i) = normal(rng);
        for (std::size_t j = i + 1; j < dim; ++j) {
            const Complex z{normal(rng), normal(rng)};
            m(i, j) = z;
            m(j, i) = std::conj(z);
        }
    }
    return m;
}

inline OperatorMatrix random_matrix(std::size_t dim, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    auto m = OperatorMatrix::zeros(dim);
    for (auto& z : m.entries())
        z = Complex{uniform(rng), uniform(rng)};
    return m;
}

// Largest |x_i - y_i| of two equally sized, sorted sequences; +inf if sizes differ.
inline double max_sorted_difference(std::vector<double> x, std::vector<double> y)
{
    if (x.size() != y.size())
        return INFINITY;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        worst = std::max(worst, std::abs(x[i] - y[i]));
    return worst;
}

// Removes from `pool` one element within tol of each value in `wanted`
// (nearest first). Returns false if some wanted value has no partner.
inline bool remove_submultiset(std::vector<double>& pool, std::vector<double> wanted, double tol)
{
    std::sort(wanted.begin(), wanted.end());
    for (const double w : wanted) {
        auto best = pool.end();
        double best_gap = tol;
        for (auto it = pool.begin(); it != pool.end(); ++it) {
            const double gap = std::abs(*it - w);
            if (gap <= best_gap) {
                best_gap = gap;
                best = it;
            }
        }
        if (best == pool.end())
            return false;
        pool.erase(best);
    }
    return true;
}

struct CliResult {
    int exit_code = 0;
    std::string out;
    std::string err;
};

inline CliResult run_cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "tc_audit");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

struct FuzzCase {
    std::vector<std::string> args;
    int expected_exit = 0;
};

inline std::string fuzz_number(double x)
{
    std::ostringstream s;
    s.precision(17);
    s << x;
    return s.str();
}

// Random CLI invocations with the exit code predicted from the documented
// rules alone: 2 for invalid input or a domain violation, 3 for an audit with
// nothing to detect (g = 0) or a control that sees the truncation edge
// (drop-edge 0), 0 otherwise.
inline std::vector<FuzzCase> fuzz_corpus(std::uint64_t seed, int count)
{
    std::mt19937_64 rng(seed);
    auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
    const double couplings[] = {0.0, 0.05, 0.1, 0.2, 0.4, 0.6};
    const double omegas[] = {0.5, 1.0, 2.0};
    std::vector<FuzzCase> corpus;
    while (static_cast<int>(corpus.size()) < count) {
        FuzzCase c;
        const int kind = pick(5);
        const double g = couplings[pick(6)];
        const double omega = omegas[pick(3)];
        if (kind == 0) {
            const int two_j = pick(8) - 1;
            const int two_lambda = pick(17) - 8;
            c.args = {"spectrum", "--two-j", std::to_string(two_j), "--two-lambda", std::to_string(two_lambda),
                      "--omega", fuzz_number(omega), "--g", fuzz_number(g), "--output", pick(2) ? "csv" : "json"};
            const bool bad = two_j < 0 || (two_j + two_lambda) % 2 != 0 || two_j + two_lambda < 0;
            c.expected_exit = bad ? 2 : 0;
        } else if (kind == 1) {
            const int cutoff = 2 + 3 * pick(3);
            const int drop = pick(4) == 0 ? 0 : 1;
            c.args = {"audit", "--omega", fuzz_number(omega), "--g", fuzz_number(g), "--cutoff-a",
                      std::to_string(cutoff), "--cutoff-f", "2", "--cutoff-d", "2", "--drop-edge",
                      std::to_string(drop)};
            if (g * g * cutoff >= omega * omega)
                c.expected_exit = 2;
            else if (g == 0.0 || drop == 0)
                c.expected_exit = 3;
            else
                c.expected_exit = 0;
        } else if (kind == 2) {
            const int k = pick(4);
            c.args = {"jc", "--k", std::to_string(k), "--delta", fuzz_number(pick(5) * 0.5 - 1.0), "--g",
                      fuzz_number(g), "--n-max", std::to_string(pick(6)), "--output", "csv"};
            c.expected_exit = k < 1 ? 2 : 0;
        } else if (kind == 3) {
            const int cutoff = 4 + 4 * pick(2);
            const double top = couplings[pick(6)];
            c.args = {"sweep", "--omega", fuzz_number(omega), "--cutoff-a", std::to_string(cutoff), "--grid",
                      "g=0:" + fuzz_number(top) + ":3", "--output", "csv"};
            const bool two = pick(4) == 0;
            if (two)
                c.args.insert(c.args.end(), {"--grid", "omega=1,2"});
            c.expected_exit = two || top * top * cutoff >= omega * omega ? 2 : 0;
        } else {
            const int variant = pick(6);
            if (variant == 0)
                c.args = {"audit", "--tol", "0"};
            else if (variant == 1)
                c.args = {"audit", "--drop-edge", "-1"};
            else if (variant == 2)
                c.args = {"spectrum", "--two-j", "1", "--two-lambda", "1", "--output", "xml"};
            else if (variant == 3)
                c.args = {"jc", "--no-such-flag", "1"};
            else if (variant == 4)
                c.args = {"spectrum"};
            else
                c.args = {"sweep", "--grid", "g=0.1,zero"};
            c.expected_exit = 2;
        }
        corpus.push_back(std::move(c));
    }
    return corpus;
}

} // namespace tcaudit::testkit
