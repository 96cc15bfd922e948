#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace confsys {

// All k-subsets of [0,n), emitted in (size-implicit) lexicographic order.
inline std::vector<std::vector<int>> subsets_of_size(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    std::vector<int> cur(k);
    for (int i = 0; i < k; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == n - k + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

// Locale-independent full-precision decimal; round-trips exactly under strtod.
inline std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// Static chunking: result identical for any worker count.
inline void parallel_for(std::int64_t n, int workers, const std::function<void(std::int64_t)>& body) {
    if (n <= 0) return;
    if (workers <= 1 || n == 1) {
        for (std::int64_t i = 0; i < n; ++i) body(i);
        return;
    }
    int w = std::min<std::int64_t>(workers, n);
    std::vector<std::thread> pool;
    pool.reserve(w);
    for (int t = 0; t < w; ++t) {
        pool.emplace_back([&, t]() {
            for (std::int64_t i = t; i < n; i += w) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

struct LinRegression {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    int points = 0;
};

inline LinRegression linear_regression(const std::vector<double>& x, const std::vector<double>& y) {
    LinRegression r;
    r.points = static_cast<int>(x.size());
    if (x.size() != y.size() || x.size() < 2) return r;
    double n = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    r.slope = sxy / sxx;
    r.intercept = my - r.slope * mx;
    if (x.size() > 2) {
        double sse = 0;
        for (size_t i = 0; i < x.size(); ++i) {
            double e = y[i] - (r.intercept + r.slope * x[i]);
            sse += e * e;
        }
        r.slope_stderr = std::sqrt(sse / (n - 2) / sxx);
    }
    return r;
}

} // namespace confsys
