#include "swclab/fixtures.hpp"

#include <cmath>
#include <stdexcept>

namespace swclab::fixtures {

PointSet summing_basis_points(int n) {
    if (n < 1) throw std::invalid_argument("summing_basis_points: n must be >= 1");
    std::vector<Vec> pts;
    for (int m = 1; m <= n; ++m) {
        Vec x = zeros(n);
        for (int k = 0; k < m; ++k) x[size_t(k)] = 1.0;
        pts.push_back(std::move(x));
    }
    return PointSet(n, AmbientNorm::linf(), std::move(pts));
}

JamesSystem summing_basis_system(int n) {
    JamesSystem sys;
    sys.theta = 1.0;
    sys.ambient = AmbientNorm::linf();
    sys.points = summing_basis_points(n).points;
    for (int m = 1; m <= n; ++m) {
        Vec f = zeros(n);
        f[size_t(m - 1)] = 1.0;  // <e_m, chi([1..k])> = 1 iff m <= k
        sys.functionals.push_back(std::move(f));
    }
    return sys;
}

PointSet block_family_points(int n_max) { return to_points(block_family(n_max)); }

PointSet l2_ball_net(int dim, int count, uint64_t seed) {
    if (dim < 1 || count < 1) throw std::invalid_argument("l2_ball_net: bad shape");
    SplitMix64 rng(seed);
    std::vector<Vec> pts;
    pts.reserve(size_t(count));
    while (int(pts.size()) < count) {
        Vec y(size_t(dim), 0.0);
        for (double& c : y) c = rng.normal();
        const double nv = norm_value(y, AmbientNorm::l2());
        if (nv < 1e-9) continue;
        if (pts.size() % 2 == 0) {
            pts.push_back(scale(y, 1.0 / nv));  // boundary
        } else {
            const double r = std::pow(rng.uniform(), 1.0 / double(dim));
            pts.push_back(scale(y, r / nv));  // interior, uniform in volume
        }
    }
    return PointSet(dim, AmbientNorm::l2(), std::move(pts)).deduplicated();
}

Embedding orthogonal_path_tree_embedding(int n) {
    MetricGraph g = binary_tree(n);
    const int total = g.vertex_count();
    const int dim = total - 1;  // one coordinate per non-root node
    std::vector<Vec> map(size_t(total), zeros(dim));
    for (int idx = 1; idx < total; ++idx) {
        Vec f = map[size_t((idx - 1) / 2)];
        f[size_t(idx - 1)] = 1.0;
        map[size_t(idx)] = std::move(f);
    }
    return Embedding{std::move(g), std::move(map), AmbientNorm::l2(), ConvexBody::lp_ball(dim, 2.0, 1.0)};
}

JamesSystem shifted_chain_system(int n, int offset, int dim) {
    if (offset < 0 || offset + n > dim) throw std::invalid_argument("shifted_chain_system: block out of range");
    JamesSystem sys;
    sys.theta = 1.0;
    sys.ambient = AmbientNorm::linf();
    for (int m = 1; m <= n; ++m) {
        Vec x = zeros(dim);
        for (int k = 0; k < m; ++k) x[size_t(offset + k)] = 1.0;
        sys.points.push_back(std::move(x));
    }
    for (int m = 1; m <= n; ++m) {
        Vec f = zeros(dim);
        f[size_t(offset + m - 1)] = 1.0;
        sys.functionals.push_back(std::move(f));
    }
    return sys;
}

}  // namespace swclab::fixtures
