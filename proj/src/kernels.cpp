#include "lcbal/kernels.hpp"

#include "lcbal/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <exception>
#include <vector>

namespace lcbal::kernels {

namespace {

Form empty_product(const Form& a, const Form& b)
{
    if (a.dim() != b.dim())
        throw StructuralError("wedge: ambient dimension mismatch (" + std::to_string(a.dim()) + " vs " +
                              std::to_string(b.dim()) + ")");
    return Form(a.dim(), a.degree() + b.degree());
}

void accumulate(Form& out, const MultiIndex& ia, const Poly& ca, const Form& b)
{
    for (const auto& [ib, cb] : b.terms()) {
        int s = shuffle_sign(ia, ib);
        if (s == 0)
            continue;
        Poly p = ca * cb;
        if (s < 0)
            p = -p;
        out.add(MultiIndex::from_mask(ia.mask() | ib.mask()), p);
    }
}

} // namespace

Form wedge_serial(const Form& a, const Form& b)
{
    Form out = empty_product(a, b);
    if (out.degree() > out.dim())
        return out;
    for (const auto& [ia, ca] : a.terms())
        accumulate(out, ia, ca, b);
    return out;
}

Form wedge_parallel(const Form& a, const Form& b)
{
    Form out = empty_product(a, b);
    if (out.degree() > out.dim())
        return out;
    std::vector<std::pair<MultiIndex, const Poly*>> left;
    left.reserve(a.terms().size());
    for (const auto& [ia, ca] : a.terms())
        left.emplace_back(ia, &ca);
    const auto n = static_cast<long>(left.size());

    std::vector<Form> partial(static_cast<std::size_t>(max_threads()), out);
#pragma omp parallel
    {
#ifdef _OPENMP
        auto tid = static_cast<std::size_t>(omp_get_thread_num());
#else
        std::size_t tid = 0;
#endif
        Form& local = partial[tid];
#pragma omp for schedule(static)
        for (long i = 0; i < n; ++i) {
            const auto& [ia, ca] = left[static_cast<std::size_t>(i)];
            accumulate(local, ia, *ca, b);
        }
    }
    for (const auto& p : partial)
        out += p;
    return out;
}

int max_threads()
{
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body)
{
    const auto n = static_cast<long>(count);
    std::vector<std::exception_ptr> errors(count);
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < n; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

void serial_for(std::size_t count, const std::function<void(std::size_t)>& body)
{
    for (std::size_t i = 0; i < count; ++i)
        body(i);
}

} // namespace lcbal::kernels
