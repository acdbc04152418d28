// Prints the action of the Hecke operators on f_n for every weight of SL2(F_q).
// usage: demo_hecke_table [p] [e] [max n]

#include <cstdlib>
#include <iostream>

#include "modrep/cind.hpp"

using namespace modrep;

int main(int argc, char** argv) {
    const int p = argc > 1 ? std::atoi(argv[1]) : 3;
    const int e = argc > 2 ? std::atoi(argv[2]) : 1;
    const int top = argc > 3 ? std::atoi(argv[3]) : 3;
    const GField& F = make_field(p, e);
    for (const auto& W : all_weights(F)) {
        CInd ind(W, top + 2);
        std::cout << W.name() << "  dim " << W.dim() << (W.degenerate() ? "  degenerate" : "  non-degenerate") << "\n";
        for (int n = -top; n <= top; ++n) {
            std::cout << "  f" << n << ":";
            for (HeckeOp op : {HeckeOp::w0, HeckeOp::w0_inv_alpha0_inv, HeckeOp::alpha0, HeckeOp::alpha0_inv}) {
                auto c = ind.fixed_coords(ind.fixed_hecke(ind.fixed_basis(n), op));
                std::cout << "  " << hecke_name(op) << " -> ";
                if (!c) {
                    std::cout << "?";
                    continue;
                }
                if (c->empty()) std::cout << "0";
                bool first = true;
                for (const auto& [k, x] : *c) {
                    std::cout << (first ? "" : " + ") << F.to_string(x) << " f" << k;
                    first = false;
                }
            }
            std::cout << "\n";
        }
    }
}
