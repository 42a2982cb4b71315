// Serial reference vs OpenMP kernels: generic-metric wedge powers and the
// multistart feasibility search. Results must agree exactly; times are wall clock.
#include "lcbal/catalog.hpp"
#include "lcbal/feasibility.hpp"
#include "lcbal/kernels.hpp"

#include <chrono>
#include <cstdio>
#include <functional>

using namespace lcbal;

namespace {

double seconds(const std::function<void()>& f, int reps)
{
    auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r)
        f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

} // namespace

int main()
{
    std::printf("threads: %d\n", kernels::max_threads());
    bool agree = true;

    for (const char* name : {"iwasawa", "kt_x_kt", "inoue_x_inoue"}) {
        const auto& e = catalog_entry(name);
        ParamSession s;
        auto gm = generic_metric(e.candidate.j, s, "h");
        Form sq = kernels::wedge_serial(gm.omega, gm.omega);
        Form a, b;
        double ts = seconds([&] { a = kernels::wedge_serial(sq, gm.omega); }, 3);
        double tp = seconds([&] { b = kernels::wedge_parallel(sq, gm.omega); }, 3);
        agree &= a == b;
        std::printf("wedge Omega^2 ^ Omega  %-14s serial %8.4f s  parallel %8.4f s  speedup %5.2f  %s\n", name, ts,
                    tp, ts / tp, a == b ? "equal" : "MISMATCH");
    }

    for (const char* name : {"kt_x_kt", "su2r_x_su2r"}) {
        const auto& e = catalog_entry(name);
        FeasibilityOptions o;
        o.search.starts = 64;
        FeasibilityReport rs, rp;
        o.search.parallel = false;
        double ts = seconds([&] { rs = kahler_feasibility(e.candidate.g, e.candidate.j, o); }, 1);
        o.search.parallel = true;
        double tp = seconds([&] { rp = kahler_feasibility(e.candidate.g, e.candidate.j, o); }, 1);
        bool same = rs.log.size() == rp.log.size() && rs.verdict == rp.verdict;
        for (std::size_t i = 0; same && i < rs.log.size(); ++i)
            same = rs.log[i].objective == rp.log[i].objective;
        agree &= same;
        std::printf("multistart kahler     %-14s serial %8.4f s  parallel %8.4f s  speedup %5.2f  %s\n", name, ts, tp,
                    ts / tp, same ? "identical logs" : "MISMATCH");
    }
    return agree ? 0 : 1;
}
