#include "qtwist/qls.hpp"

namespace qtw {

QlsDatum make_datum(FiniteGroup G, std::vector<int> g, std::vector<Character> chi) {
    if (g.size() != chi.size() || g.empty())
        throw Error("datum: need matching nonempty lists of group elements and characters");
    QlsDatum d;
    d.theta = static_cast<int>(g.size());
    for (int i = 0; i < d.theta; ++i) {
        if (g[i] < 0 || g[i] >= G.order())
            throw Error("datum: element index " + std::to_string(g[i]) + " out of range");
        std::string w;
        if (!character_validate(G, chi[i], &w))
            throw Error("datum: entry " + std::to_string(i + 1) + " is not a character: " + w);
    }
    d.q.assign(d.theta, std::vector<Cyclotomic>(d.theta));
    d.N.assign(d.theta, 0);
    for (int i = 0; i < d.theta; ++i)
        for (int j = 0; j < d.theta; ++j) d.q[i][j] = chi[j].value(g[i]);
    long cap = G.exponent();
    for (int i = 0; i < d.theta; ++i) {
        auto ord = d.q[i][i].multiplicative_order(cap);
        if (!ord)
            throw Error("datum: q_" + std::to_string(i + 1) + " is not a root of unity");
        d.N[i] = *ord;
    }
    d.Gamma = subgroup_generated(G, g);
    d.G = std::move(G);
    d.g = std::move(g);
    d.chi = std::move(chi);
    return d;
}

VerificationReport datum_validate(const QlsDatum& d) {
    VerificationReport rep("datum validation");
    for (int i = 0; i < d.theta; ++i) {
        bool central = d.G.is_central(d.g[i]);
        rep.check("generator-central(i=" + std::to_string(i + 1) + ")", central,
                  {"g_" + std::to_string(i + 1) + " = element " + std::to_string(d.g[i]),
                   "commutes with every group element", "does not"});
    }
    for (int i = 0; i < d.theta; ++i)
        for (int j = i + 1; j < d.theta; ++j) {
            Cyclotomic prod = d.q_at(i, j) * d.q_at(j, i);
            rep.check("braiding-reciprocal(i=" + std::to_string(i + 1) +
                          ",j=" + std::to_string(j + 1) + ")",
                      prod.is_one(),
                      {"q_" + std::to_string(i + 1) + std::to_string(j + 1) + " * q_" +
                           std::to_string(j + 1) + std::to_string(i + 1),
                       "1", prod.to_string()});
        }
    for (int i = 0; i < d.theta; ++i) {
        rep.check("self-braiding-order(i=" + std::to_string(i + 1) + ")", d.N[i] > 1,
                  {"order of q_" + std::to_string(i + 1), "> 1", std::to_string(d.N[i])},
                  "q_" + std::to_string(i + 1) + " = " + d.q_diag(i).to_string());
    }
    return rep;
}

bool datum_is_valid(const QlsDatum& d) { return datum_validate(d).all_passed(); }

ScalarFamily ScalarFamily::zero(int theta) {
    ScalarFamily D;
    D.a.assign(theta, std::vector<Cyclotomic>(theta));
    D.xi.assign(theta, Cyclotomic{});
    return D;
}

bool ScalarFamily::operator==(const ScalarFamily& o) const {
    return a == o.a && xi == o.xi;
}

static void require_same_theta(int x, int y) {
    if (x != y) throw Error("scalar families have different sizes");
}

ScalarFamily family_sum(const ScalarFamily& D1, const ScalarFamily& D2) {
    require_same_theta(D1.theta(), D2.theta());
    ScalarFamily out = D1;
    for (int i = 0; i < D1.theta(); ++i) {
        for (int j = 0; j < D1.theta(); ++j) out.a[i][j] += D2.a[i][j];
        out.xi[i] += D2.xi[i];
    }
    return out;
}

ScalarFamily family_act(const QlsDatum& d, int g, const ScalarFamily& D) {
    require_same_theta(d.theta, D.theta());
    ScalarFamily out = ScalarFamily::zero(d.theta);
    for (int i = 0; i < d.theta; ++i) {
        for (int j = 0; j < d.theta; ++j) {
            if (i == j) continue;
            out.a[i][j] = d.chi[i].value(g) * d.chi[j].value(g) * D.a[i][j];
        }
        out.xi[i] = d.chi[i].value(g).pow(d.N[i]) * D.xi[i];
    }
    return out;
}

ScalarFamily family_hat(const QlsDatum& d, const ScalarFamily& D) {
    require_same_theta(d.theta, D.theta());
    ScalarFamily out = ScalarFamily::zero(d.theta);
    for (int i = 0; i < d.theta; ++i)
        for (int j = 0; j < d.theta; ++j) {
            if (i == j) continue;
            out.a[i][j] = d.q_at(i, j) * D.a[j][i] - D.a[i][j];
        }
    out.xi = D.xi;
    return out;
}

bool family_is_q_symmetric(const QlsDatum& d, const ScalarFamily& D) {
    require_same_theta(d.theta, D.theta());
    for (int i = 0; i < d.theta; ++i)
        for (int j = 0; j < d.theta; ++j) {
            if (i == j) continue;
            if (D.a[i][j] != -(d.q_at(i, j) * D.a[j][i])) return false;
        }
    return true;
}

bool family_compatible(const QlsDatum& d, const ScalarFamily& D) {
    require_same_theta(d.theta, D.theta());
    for (int i = 0; i < d.theta; ++i) {
        for (int j = 0; j < d.theta; ++j) {
            if (i == j) continue;
            if (!D.a[i][j].is_zero() && d.G.op(d.g[i], d.g[j]) != d.G.identity()) return false;
        }
        if (!D.xi[i].is_zero() && d.G.power(d.g[i], d.N[i]) != d.G.identity()) return false;
    }
    return true;
}

bool family_invariant(const QlsDatum& d, const ScalarFamily& D, const Subgroup& F) {
    require_same_theta(d.theta, D.theta());
    for (int g : F.members)
        if (!(family_act(d, g, D) == D)) return false;
    return true;
}

bool family_invariant_bilinear(const QlsDatum& d, const ScalarFamily& D) {
    require_same_theta(d.theta, D.theta());
    for (int i = 0; i < d.theta; ++i) {
        for (int j = 0; j < d.theta; ++j) {
            if (i == j || D.a[i][j].is_zero()) continue;
            for (int k = 0; k < d.theta; ++k)
                if (!(d.q_at(i, k) * d.q_at(j, k)).is_one()) return false;
        }
        if (D.xi[i].is_zero()) continue;
        for (int j = 0; j < d.theta; ++j)
            if (!d.q_at(i, j).pow(d.N[i]).is_one()) return false;
    }
    return true;
}

} // namespace qtw
