#pragma once

#include <cstdint>
#include <random>

#include "proxcert/types.hpp"

namespace proxcert {

// Seeded random source. All generators and samplers in the project go
// through this wrapper so a 64-bit seed pins every fixture and test.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double gaussian(double mean = 0.0, double stddev = 1.0) {
        return std::normal_distribution<double>(mean, stddev)(eng_);
    }

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(eng_);
    }

    // log-uniform on [lo, hi], lo > 0
    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }

    int uniform_int(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(eng_);
    }

    Vec gaussian_vec(int n, double stddev = 1.0) {
        Vec v(n);
        for (int i = 0; i < n; ++i) v[i] = gaussian(0.0, stddev);
        return v;
    }

    Mat gaussian_mat(int rows, int cols) {
        Mat m(rows, cols);
        for (int j = 0; j < cols; ++j)
            for (int i = 0; i < rows; ++i) m(i, j) = gaussian();
        return m;
    }

    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

}  // namespace proxcert
