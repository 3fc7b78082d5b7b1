#include "ctxkit/catalog.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "ctxkit/errors.hpp"

namespace ctxkit {

MeasurementScenario bell_scenario() {
    return MeasurementScenario::make(
        {"A0", "A1", "B0", "B1"},
        {{"A0", "B0"}, {"A0", "B1"}, {"A1", "B0"}, {"A1", "B1"}}, 2);
}

namespace {

std::vector<Rational> row(const std::string& p00, const std::string& p01, const std::string& p10,
                          const std::string& p11) {
    return {parse_rational(p00), parse_rational(p01), parse_rational(p10), parse_rational(p11)};
}

EmpiricalModel bell_table_model() {
    return EmpiricalModel(bell_scenario(), {
                                               row("1/2", "0", "0", "1/2"),
                                               row("3/8", "1/8", "1/8", "3/8"),
                                               row("3/8", "1/8", "1/8", "3/8"),
                                               row("1/8", "3/8", "3/8", "1/8"),
                                           });
}

EmpiricalModel pr_box_model() {
    return EmpiricalModel(bell_scenario(), {
                                               row("1/2", "0", "0", "1/2"),
                                               row("1/2", "0", "0", "1/2"),
                                               row("1/2", "0", "0", "1/2"),
                                               row("0", "1/2", "1/2", "0"),
                                           });
}

/// Hardy support: (A0,B0)=00 possible while (A0,B1)=00, (A1,B0)=00 and
/// (A1,B1)=11 are impossible, every other event possible. The rational
/// table below realizes exactly that support and is nonsignalling.
EmpiricalModel hardy_model() {
    return EmpiricalModel(bell_scenario(), {
                                               row("1/16", "3/16", "1/16", "11/16"),
                                               row("0", "1/4", "1/2", "1/4"),
                                               row("0", "3/4", "1/8", "1/8"),
                                               row("1/4", "1/2", "1/4", "0"),
                                           });
}

EmpiricalModel ghz_model() {
    // Three parties, each choosing X or Y; all 2^3 setting combinations are
    // contexts.
    std::vector<std::string> names{"X1", "Y1", "X2", "Y2", "X3", "Y3"};
    std::vector<std::vector<std::string>> contexts;
    for (int mask = 0; mask < 8; ++mask) {
        std::vector<std::string> ctx;
        for (int site = 0; site < 3; ++site) {
            const bool y = (mask >> (2 - site)) & 1;
            ctx.push_back(std::string(y ? "Y" : "X") + std::to_string(site + 1));
        }
        contexts.push_back(std::move(ctx));
    }
    MeasurementScenario s = MeasurementScenario::make(names, contexts, 2);

    const int m = 4;
    CycMatrix I = CycMatrix::identity(2, m);
    CycMatrix X(2, 2, m), Y(2, 2, m);
    X.at(0, 1) = Cyclotomic::one(m);
    X.at(1, 0) = Cyclotomic::one(m);
    Y.at(0, 1) = -Cyclotomic::root_power(m, 1);
    Y.at(1, 0) = Cyclotomic::root_power(m, 1);

    auto at_site = [&](const CycMatrix& p, int site) {
        CycMatrix r = site == 0 ? p : I;
        for (int i = 1; i < 3; ++i)
            r = r.kron(i == site ? p : I);
        return r;
    };
    std::vector<CycMatrix> ops;
    for (int i = 0; i < s.measurement_count(); ++i) {
        const std::string& name = s.measurement_name(i);
        const int site = name[1] - '1';
        ops.push_back(at_site(name[0] == 'X' ? X : Y, site));
    }

    // |000> + |111>, unnormalized.
    StateVector ghz;
    ghz.conductor = m;
    ghz.amplitudes.assign(8, Cyclotomic::zero(m));
    ghz.amplitudes[0] = Cyclotomic::one(m);
    ghz.amplitudes[7] = Cyclotomic::one(m);
    return quantum_model_from_operators(s, ops, StateMixture{{Rational(1), ghz}});
}

StateVector cs_state() {
    // sum_{j,k} w^(j k^2) |j>|k>  over Z_3
    StateVector psi;
    psi.conductor = 3;
    psi.amplitudes.assign(9, Cyclotomic::zero(3));
    for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k)
            psi.amplitudes[3 * j + k] = Cyclotomic::root_power(3, j * k * k % 3);
    }
    return psi;
}

}  // namespace

bool is_catalog_model(const std::string& name) {
    return name == "bell_table" || name == "pr_box" || name == "hardy" || name == "ghz";
}

bool is_catalog_state(const std::string& name) {
    return name == "cs_state" || name.rfind("file:", 0) == 0;
}

EmpiricalModel catalog_model(const std::string& name) {
    if (name == "bell_table")
        return bell_table_model();
    if (name == "pr_box")
        return pr_box_model();
    if (name == "hardy")
        return hardy_model();
    if (name == "ghz")
        return ghz_model();
    throw input_error("unknown catalog model '" + name + "'");
}

StateVector catalog_state(const std::string& name) {
    if (name == "cs_state")
        return cs_state();
    if (name.rfind("file:", 0) == 0) {
        const std::string path = name.substr(5);
        std::ifstream in(path);
        if (!in)
            throw input_error("cannot open amplitude file '" + path + "'");
        return parse_amplitude_file(in);
    }
    throw input_error("unknown catalog state '" + name + "'");
}

std::vector<EventWeight> chsh_weights() {
    std::vector<EventWeight> w;
    auto add = [&](int context, Outcome a, Outcome b) {
        w.push_back(EventWeight{ObservableEvent{context, {a, b}}, Rational(1)});
    };
    for (int c = 0; c < 3; ++c) {
        add(c, 0, 0);
        add(c, 1, 1);
    }
    add(3, 0, 1);
    add(3, 1, 0);
    return w;
}

StateVector parse_amplitude_file(std::istream& in) {
    std::string line;
    int m = 0;
    long dim = 0;
    bool header_seen = false;
    StateVector psi;

    auto strip = [](std::string s) {
        const auto hash = s.find('#');
        if (hash != std::string::npos)
            s.erase(hash);
        const auto first = s.find_first_not_of(" \t\r");
        if (first == std::string::npos)
            return std::string();
        const auto last = s.find_last_not_of(" \t\r");
        return s.substr(first, last - first + 1);
    };

    while (std::getline(in, line)) {
        line = strip(line);
        if (line.empty())
            continue;
        if (!header_seen) {
            std::istringstream ls(line);
            std::string word, mfield, dimfield;
            ls >> word >> mfield >> dimfield;
            if (word != "cyclotomic" || mfield.rfind("m=", 0) != 0 ||
                dimfield.rfind("dim=", 0) != 0)
                throw input_error("amplitude file must start with 'cyclotomic m=<m> dim=<dim>'");
            m = std::stoi(mfield.substr(2));
            dim = std::stol(dimfield.substr(4));
            if (m < 1 || dim < 1)
                throw input_error("bad amplitude file header: '" + line + "'");
            psi.conductor = m;
            psi.amplitudes.assign(dim, Cyclotomic::zero(m));
            header_seen = true;
            continue;
        }
        const auto colon = line.find(':');
        if (colon == std::string::npos)
            throw input_error("bad amplitude line (missing ':'): '" + line + "'");
        long index;
        try {
            index = std::stol(line.substr(0, colon));
        } catch (const std::exception&) {
            throw input_error("bad amplitude index: '" + line + "'");
        }
        if (index < 0 || index >= dim)
            throw input_error("amplitude index " + std::to_string(index) +
                              " outside dimension " + std::to_string(dim));
        std::istringstream coeffs(line.substr(colon + 1));
        std::string token;
        Cyclotomic value(m);
        int power = 0;
        while (std::getline(coeffs, token, ',')) {
            token = strip(token);
            if (power >= m)
                throw input_error("more than m coefficients on line: '" + line + "'");
            if (!token.empty())
                value += Cyclotomic::root_power(m, power) * parse_rational(token);
            ++power;
        }
        if (power == 0)
            throw input_error("amplitude line has no coefficients: '" + line + "'");
        psi.amplitudes[index] = value;
    }
    if (!header_seen)
        throw input_error("amplitude file is empty");
    for (const auto& a : psi.amplitudes) {
        if (!a.is_zero())
            return psi;
    }
    throw input_error("amplitude file describes the zero vector");
}

void write_amplitude_file(const StateVector& psi, std::ostream& out) {
    out << "cyclotomic m=" << psi.conductor << " dim=" << psi.amplitudes.size() << "\n";
    for (size_t i = 0; i < psi.amplitudes.size(); ++i) {
        const auto& a = psi.amplitudes[i];
        if (a.is_zero())
            continue;
        out << i << ": ";
        const auto& coeff = a.coefficients();
        for (size_t j = 0; j < coeff.size(); ++j) {
            if (j > 0)
                out << ",";
            out << format_rational(coeff[j]);
        }
        out << "\n";
    }
}

}  // namespace ctxkit
