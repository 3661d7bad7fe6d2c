#include "fluxjac/autodiff/dual.hpp"

#include <atomic>

namespace fluxjac {

namespace {
std::atomic<bool> g_trap{false};
}

void set_ad_trap_domain_errors(bool on) { g_trap.store(on, std::memory_order_relaxed); }
bool ad_trap_domain_errors() { return g_trap.load(std::memory_order_relaxed); }

}  // namespace fluxjac
