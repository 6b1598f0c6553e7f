#include <cstdlib>
#include <string>

#include "roadfield/errors.hpp"
#include "roadfield/kernels.hpp"

namespace roadfield::kernels {

std::string to_string(Isa isa) {
    switch (isa) {
        case Isa::Scalar: return "scalar";
        case Isa::Avx2: return "avx2";
        case Isa::Neon: return "neon";
    }
    return "unknown";
}

bool isa_available(Isa isa) {
    switch (isa) {
        case Isa::Scalar: return true;
        case Isa::Avx2:
#if defined(ROADFIELD_BUILD_AVX2) && (defined(__GNUC__) || defined(__clang__))
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
        case Isa::Neon:
#if defined(ROADFIELD_BUILD_NEON)
            return true;
#else
            return false;
#endif
    }
    return false;
}

Isa best_isa() {
    if (isa_available(Isa::Avx2)) return Isa::Avx2;
    if (isa_available(Isa::Neon)) return Isa::Neon;
    return Isa::Scalar;
}

Isa active_isa() {
    static const Isa chosen = [] {
        if (const char* env = std::getenv("ROADFIELD_ISA")) {
            const std::string want(env);
            for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
                if (want == to_string(isa) && isa_available(isa)) return isa;
            }
        }
        return best_isa();
    }();
    return chosen;
}

#if !defined(ROADFIELD_BUILD_AVX2)
bool update_row_avx2(const RowArgs&) { throw Error("AVX2 kernel not built"); }
#endif
#if !defined(ROADFIELD_BUILD_NEON)
bool update_row_neon(const RowArgs&) { throw Error("NEON kernel not built"); }
#endif

bool update_row(Isa isa, const RowArgs& args) {
    switch (isa) {
        case Isa::Avx2: return update_row_avx2(args);
        case Isa::Neon: return update_row_neon(args);
        case Isa::Scalar: break;
    }
    return update_row_scalar(args);
}

}  // namespace roadfield::kernels
