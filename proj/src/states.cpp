#include "crjc/states.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace crjc {

QubitFieldState::QubitFieldState(FockVector e_comp, FockVector g_comp)
    : e(std::move(e_comp)), g(std::move(g_comp))
{
    if (e.cutoff() != g.cutoff())
        throw std::invalid_argument("QubitFieldState: branch cutoffs differ");
}

QubitFieldState& QubitFieldState::operator*=(cplx s)
{
    e *= s;
    g *= s;
    return *this;
}

double InitialCondition::weight_norm() const
{
    return std::sqrt(std::norm(alpha_e) + std::norm(alpha_g));
}

QubitFieldState InitialCondition::state() const { return build_initial(alpha_e, alpha_g, c, d); }

bool InitialCondition::separable(double tol) const
{
    if (alpha_e == cplx{} || alpha_g == cplx{})
        return true;
    for (std::size_t n = 0; n < c.dim(); ++n)
        if (std::abs(c[n] - d[n]) > tol)
            return false;
    return true;
}

const FockVector& InitialCondition::field() const { return alpha_e == cplx{} ? d : c; }

namespace {

void check_unit(const FockVector& v, const char* name)
{
    if (!v.all_finite())
        throw std::invalid_argument(std::string("initial state: non-finite amplitudes in ") + name);
    if (std::abs(v.norm2() - 1.0) > 1e-8)
        throw std::invalid_argument(std::string("initial state: ") + name +
                                    " is not unit norm (|v|^2 = " + std::to_string(v.norm2()) +
                                    ")");
}

} // namespace

InitialCondition make_initial(cplx alpha_e, cplx alpha_g, FockVector c, FockVector d)
{
    if (alpha_e == cplx{} && alpha_g == cplx{})
        throw std::invalid_argument("initial state: both branch weights are zero");
    if (c.cutoff() != d.cutoff())
        throw std::invalid_argument("initial state: c and d cutoffs differ");
    check_unit(c, "c");
    check_unit(d, "d");
    return InitialCondition{alpha_e, alpha_g, std::move(c), std::move(d)};
}

QubitFieldState build_initial(cplx alpha_e, cplx alpha_g, const FockVector& c, const FockVector& d)
{
    const auto ic = make_initial(alpha_e, alpha_g, c, d);
    const double n_eg = ic.weight_norm();
    return QubitFieldState((alpha_e / n_eg) * c, (alpha_g / n_eg) * d);
}

cplx parse_complex(const std::string& raw)
{
    std::string s;
    for (char ch : raw)
        if (!std::isspace(static_cast<unsigned char>(ch)))
            s += ch;
    if (s.empty())
        throw std::invalid_argument("empty complex number");
    auto to_double = [&](const std::string& t) {
        if (t.empty() || t == "+")
            return 1.0;
        if (t == "-")
            return -1.0;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(t, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != t.size())
            throw std::invalid_argument("bad complex number '" + raw + "'");
        return v;
    };
    if (s.back() != 'i')
        return {to_double(s), 0.0};
    s.pop_back();
    // split at the last sign that is not an exponent sign or the leading char
    std::size_t split = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos)
        return {0.0, to_double(s)};
    return {to_double(s.substr(0, split)), to_double(s.substr(split))};
}

namespace {

struct Call
{
    std::string name;
    std::vector<std::string> args;
};

Call split_call(const std::string& spec)
{
    const auto open = spec.find('(');
    const auto close = spec.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open)
        throw std::invalid_argument("initial state '" + spec + "': expected name(args)");
    Call call;
    for (char ch : spec.substr(0, open))
        if (!std::isspace(static_cast<unsigned char>(ch)))
            call.name += ch;
    std::stringstream body(spec.substr(open + 1, close - open - 1));
    std::string item;
    while (std::getline(body, item, ','))
        call.args.push_back(item);
    return call;
}

void expect_args(const Call& call, std::size_t n, const std::string& spec)
{
    if (call.args.size() != n)
        throw std::invalid_argument("initial state '" + spec + "': " + call.name + " takes " +
                                    std::to_string(n) + " argument(s)");
}

} // namespace

ParsedInitial parse_initial_spec(const std::string& spec, int cutoff, int k, double tail_tolerance)
{
    const Call call = split_call(spec);
    ParsedInitial out;
    auto coherent = [&](const std::string& arg) {
        auto amps = coherent_amplitudes(parse_complex(arg), cutoff, k, tail_tolerance);
        out.tail_mass = std::max(out.tail_mass, amps.tail_mass);
        out.tail_warning = out.tail_warning || amps.tail_warning;
        // renormalise the truncated vector so it satisfies the unit-norm
        // precondition; the tail report records what was cut
        const double nrm = amps.amps.norm();
        return (1.0 / nrm) * amps.amps;
    };
    if (call.name == "excited-coherent") {
        expect_args(call, 1, spec);
        auto c = coherent(call.args[0]);
        out.condition = make_initial(1.0, 0.0, c, c);
    } else if (call.name == "ground-coherent") {
        expect_args(call, 1, spec);
        auto d = coherent(call.args[0]);
        out.condition = make_initial(0.0, 1.0, d, d);
    } else if (call.name == "superposition") {
        expect_args(call, 4, spec);
        out.condition = make_initial(parse_complex(call.args[0]), parse_complex(call.args[1]),
                                     coherent(call.args[2]), coherent(call.args[3]));
    } else if (call.name == "fock") {
        expect_args(call, 2, spec);
        std::string branch;
        for (char ch : call.args[0])
            if (!std::isspace(static_cast<unsigned char>(ch)))
                branch += ch;
        const double level = std::real(parse_complex(call.args[1]));
        const int n = static_cast<int>(level);
        if (n != level || n < 0)
            throw std::invalid_argument("initial state '" + spec + "': bad Fock level");
        auto v = FockVector::basis(cutoff, n);
        if (branch == "e")
            out.condition = make_initial(1.0, 0.0, v, v);
        else if (branch == "g")
            out.condition = make_initial(0.0, 1.0, v, v);
        else
            throw std::invalid_argument("initial state '" + spec + "': branch must be e or g");
    } else {
        throw std::invalid_argument("initial state '" + spec + "': unknown form '" + call.name +
                                    "'");
    }
    return out;
}

Tracked<QubitFieldState> susy_map(const QubitFieldState& state, int k)
{
    auto e = apply_raise_k(state.e, k);
    auto g = apply_lower_k(state.g, k);
    return {QubitFieldState(std::move(e.value), std::move(g.value)), e.leaked + g.leaked};
}

Preimage rotating_preimage(const QubitFieldState& state, int k)
{
    if (k < 1)
        throw std::invalid_argument("rotating_preimage: k must be >= 1");
    const int N = state.cutoff();
    Preimage out{QubitFieldState(N), 0.0, 0.0};
    for (int n = 0; n <= N; ++n) {
        const auto idx = static_cast<std::size_t>(n);
        if (n < k)
            out.dropped += std::norm(state.e[idx]);
        else
            out.value.e[static_cast<std::size_t>(n - k)] =
                state.e[idx] / sqrt_factorial_ratio(n - k, k);

        const cplx x = state.g[idx] / sqrt_factorial_ratio(n, k);
        if (n + k <= N)
            out.value.g[static_cast<std::size_t>(n + k)] = x;
        else
            out.leaked += std::norm(x);
    }
    return out;
}

std::vector<double> schmidt_coefficients(const QubitFieldState& state)
{
    const auto dim = static_cast<Eigen::Index>(state.e.dim());
    Eigen::MatrixXcd m(2, dim);
    for (Eigen::Index n = 0; n < dim; ++n) {
        m(0, n) = state.e[static_cast<std::size_t>(n)];
        m(1, n) = state.g[static_cast<std::size_t>(n)];
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto& sv = svd.singularValues();
    return {sv.data(), sv.data() + sv.size()};
}

} // namespace crjc
