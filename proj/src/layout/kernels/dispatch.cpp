#include <cstdlib>
#include <string_view>

#include "netvis/kernels.hpp"

namespace netvis::layout::kernels {

const KernelTable& active_kernels() {
    static const KernelTable& chosen = []() -> const KernelTable& {
        const char* forced = std::getenv("NETVIS_KERNELS");
        if (forced != nullptr && std::string_view(forced) == "scalar") {
            return scalar_kernels();
        }
        if (const KernelTable* wide = avx2_kernels()) {
            return *wide;
        }
        return scalar_kernels();
    }();
    return chosen;
}

}  // namespace netvis::layout::kernels
