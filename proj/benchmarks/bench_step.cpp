// Times a fixed integration workload with the serial and the threaded
// block kernels and checks that the two produce bit-identical enclosures.

#include <bit>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>

#include "crl/lohner.hpp"

using namespace crl;

namespace {

struct RunResult {
    IVector hull;
    double seconds = 0.0;
};

RunResult run(int order, int steps) {
    VectorField f =
        VectorField::parse({"v", "-sin(x) + sin(w*t)", "1"}, {"x", "v", "t"}, {"w"});
    LohnerOptions lo;
    CnLohner solver(f, IVector{Interval(6.0)}, lo);

    std::size_t n = 3;
    auto blocks = all_multipointers(static_cast<int>(n), order);
    std::vector<IVector> seeds;
    for (const auto& a : blocks) {
        IVector s(n);
        for (std::size_t i = 0; i < n; ++i) s[i] = Interval(0.0);
        if (a.size() == 1) s[static_cast<std::size_t>(a[0] - 1)] = Interval(1.0);
        seeds.push_back(s);
    }

    IVector x0{Interval(-1e-3, 1e-3), Interval(-0.1724, -0.1704), Interval(0.0)};
    auto t0 = std::chrono::steady_clock::now();
    solver.init(x0, blocks, seeds);
    for (int i = 0; i < steps; ++i) solver.flow(Interval(0.05));
    RunResult r;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.hull = solver.state().hull();
    return r;
}

bool identical(const IVector& a, const IVector& b) {
    if (a.size() != b.size()) return false;
    auto bits = [](double x) { return std::bit_cast<std::uint64_t>(x); };
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (bits(a[i].lo()) != bits(b[i].lo())) return false;
        if (bits(a[i].hi()) != bits(b[i].hi())) return false;
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    int order = argc > 1 ? std::atoi(argv[1]) : 3;
    int steps = argc > 2 ? std::atoi(argv[2]) : 40;
    int workers = argc > 3 ? std::atoi(argv[3]) : 0;  // 0: OpenMP default

    set_parallel(false);
    RunResult serial = run(order, steps);

    set_parallel(true);
    if (workers > 0) set_workers(workers);
    RunResult parallel = run(order, steps);

    std::printf("order %d, %d steps of the forced pendulum variational flow\n", order, steps);
    std::printf("  serial     %8.3f s\n", serial.seconds);
    std::printf("  parallel   %8.3f s   speedup %.2fx\n", parallel.seconds,
                serial.seconds / parallel.seconds);

    if (!identical(serial.hull, parallel.hull)) {
        std::printf("  MISMATCH: the threaded kernels changed the enclosure\n");
        return 1;
    }
    std::printf("  enclosures bit-identical\n");
    return 0;
}
