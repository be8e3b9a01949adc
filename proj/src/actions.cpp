#include "caw/actions.hpp"

namespace caw {

AnomalousAction<Cyc> tensor_actions(const AnomalousAction<Cyc>& a1,
                                    const AnomalousAction<Cyc>& a2) {
    if (!a1.group.same_table(a2.group)) throw InputError("tensor_actions: group mismatch");
    auto m1 = std::dynamic_pointer_cast<const MultiMatrixAlgebra>(a1.algebra);
    auto m2 = std::dynamic_pointer_cast<const MultiMatrixAlgebra>(a2.algebra);
    if (!m1 || !m2) throw InputError("tensor_actions needs multi-matrix algebras");
    auto prod = m1->tensor(*m2);
    const GroupTable& g = a1.group;

    AnomalousAction<Cyc> out;
    out.group = g;
    out.algebra = prod;
    for (int x = 0; x < g.order; ++x)
        out.alpha.push_back(tensor_monomial(a1.alpha[x], a2.alpha[x], prod, prod));
    out.u.assign(g.order, {});
    for (int x = 0; x < g.order; ++x)
        for (int y = 0; y < g.order; ++y)
            out.u[x].push_back(tensor_element(a1.u[x][y], a2.u[x][y], prod));

    Cochain w1 = extract_anomaly(a1), w2 = extract_anomaly(a2);
    if (!anomaly_matches(out, w1 + w2))
        throw InvariantViolation("tensor anomaly is not the phase sum of the factors");
    return out;
}

} // namespace caw
