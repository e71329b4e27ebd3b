// Compares the serial reference sweep with the OpenMP one on the two heavy
// verification kernels: algebra associativity and pairing compatibility.
// ATLIFT_THREADS controls the parallel worker count.

#include <chrono>
#include <cstdio>
#include <functional>
#include <tuple>

#include "atlift/connection.hpp"
#include "atlift/sampling.hpp"
#include "atlift/sweep.hpp"

using namespace atlift;

namespace {

double time_s(const std::function<void()>& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class Fn>
void run_case(const char* name, std::int64_t n, Fn&& fn) {
    std::vector<SweepHit> serial_hits, parallel_hits;
    double ts = time_s([&] { serial_hits = sweep_serial(n, fn); });
    double tp = time_s([&] { parallel_hits = sweep_parallel(n, fn); });
    bool agree = serial_hits == parallel_hits;
    std::printf("%-24s items=%8lld serial=%7.3fs parallel=%7.3fs speedup=%5.2fx agree=%s\n", name,
                static_cast<long long>(n), ts, tp, tp > 0 ? ts / tp : 0.0,
                agree ? "yes" : "NO");
    if (!agree) std::printf("  !! parallel result diverges from the serial reference\n");
}

}  // namespace

int main() {
    std::printf("workers: %d (set ATLIFT_THREADS to change)\n", sweep_threads());

    // Associativity over all basis triples of the largest canned algebra.
    BGA A = *canned_model("iwasawa");
    const std::int64_t dim = A.dim();
    run_case("associativity", dim * dim * dim, [&](std::int64_t t) -> std::string {
        int i = static_cast<int>(t / (dim * dim));
        int j = static_cast<int>((t / dim) % dim);
        int k = static_cast<int>(t % dim);
        BGAElement lhs = A.mul(A.mul(BGAElement::single(i), BGAElement::single(j)),
                               BGAElement::single(k));
        BGAElement rhs = A.mul(BGAElement::single(i),
                               A.mul(BGAElement::single(j), BGAElement::single(k)));
        if (lhs == rhs) return {};
        return "associativity breaks at (" + std::to_string(i) + "," + std::to_string(j) + "," +
               std::to_string(k) + ")";
    });

    // Pairing compatibility over ordered pairs of endomorphism basis elements
    // on a drawn instance.
    BGA T = *canned_model("torus2");
    Rng rc = seeded(17, "bench-complex");
    FreeComplex cx = random_complex(T, {2, 2}, rc);
    Rng rg = seeded(17, "bench-connection");
    Connection conn = random_connection(cx, rg);
    CyclicForm F;
    std::vector<std::tuple<HKey, int, int>> items;
    for (int k = 0; k < T.dim(); ++k)
        for (const auto& [l, rl] : cx.ranks)
            for (const auto& [l2, rl2] : cx.ranks)
                for (int i = 0; i < rl2; ++i)
                    for (int j = 0; j < rl; ++j) items.emplace_back(HKey{k, l, l2 - l}, i, j);
    const std::int64_t m = static_cast<std::int64_t>(items.size());
    const std::int64_t pairs = std::min<std::int64_t>(m * m, 20000);
    run_case("compatibility", pairs, [&](std::int64_t t) -> std::string {
        const auto& [ka, ia, ja] = items[t / m];
        const auto& [kb, ib, jb] = items[t % m];
        return check_compatibility(conn, F, basis_homform(cx, ka, ia, ja),
                                   basis_homform(cx, kb, ib, jb));
    });
    return 0;
}
