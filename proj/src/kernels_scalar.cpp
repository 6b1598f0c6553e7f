#include "kernel_element.hpp"

namespace roadfield::kernels {

bool update_row_scalar(const RowArgs& a) {
    bool ok = detail::edges(a);
    for (std::size_t i = 1; i + 1 < a.n; ++i) {
        const double v = detail::element(a, i, a.mid[i - 1], a.mid[i + 1]);
        a.out[i] = v;
        ok = ok && detail::within(v, a.bound);
    }
    return ok;
}

}  // namespace roadfield::kernels
