#include "lcbal/numerics.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>

namespace lcbal::numerics {

std::mt19937_64 start_rng(std::uint64_t seed, int start)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(start), 0x6c63u};
    return std::mt19937_64(seq);
}

CompiledPoly::CompiledPoly(const Poly& p, const std::vector<Var>& order) : nvars_(order.size())
{
    std::map<std::uint32_t, std::size_t> pos;
    for (std::size_t i = 0; i < order.size(); ++i)
        pos[order[i].id()] = i;
    for (const auto& [mono, c] : p.terms()) {
        Term t{c.get_d(), {}};
        for (const auto& [v, e] : mono.factors())
            t.powers.emplace_back(pos.at(v), e);
        terms_.push_back(std::move(t));
    }
}

double CompiledPoly::operator()(const std::vector<double>& x) const
{
    double s = 0;
    for (const auto& t : terms_) {
        double m = t.coef;
        for (auto [i, e] : t.powers)
            m *= std::pow(x[i], static_cast<double>(e));
        s += m;
    }
    return s;
}

double CompiledPoly::eval_grad(const std::vector<double>& x, std::vector<double>& grad) const
{
    grad.assign(nvars_, 0.0);
    double s = 0;
    for (const auto& t : terms_) {
        double m = t.coef;
        for (auto [i, e] : t.powers)
            m *= std::pow(x[i], static_cast<double>(e));
        s += m;
        for (std::size_t k = 0; k < t.powers.size(); ++k) {
            auto [i, e] = t.powers[k];
            double d = t.coef * e * std::pow(x[i], static_cast<double>(e) - 1);
            for (std::size_t l = 0; l < t.powers.size(); ++l)
                if (l != k)
                    d *= std::pow(x[t.powers[l].first], static_cast<double>(t.powers[l].second));
            grad[i] += d;
        }
    }
    return s;
}

double to_double(const Rational& q)
{
    return q.get_d();
}

Eigen::MatrixXd to_eigen(const Matrix& m)
{
    Eigen::MatrixXd out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(r, c).get_d();
    return out;
}

double min_eigen(const Eigen::MatrixXd& m, Eigen::VectorXd* vec)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    if (vec)
        *vec = es.eigenvectors().col(0);
    return es.eigenvalues()(0);
}

Vector rationalize(const std::vector<double>& x, long max_den)
{
    Vector out;
    out.reserve(x.size());
    for (double v : x)
        out.push_back(lcbal::rationalize(v, max_den));
    return out;
}

} // namespace lcbal::numerics
