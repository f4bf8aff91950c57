#pragma once

#include "ncoop/scenario.hpp"

#include <vector>

namespace fixtures {

using ncoop::NetworkCode;
using ncoop::Relay;
using ncoop::RelayClass;

inline Relay fc(ncoop::Bits g) { return {RelayClass::Full, {std::move(g), false}}; }
inline Relay pc(ncoop::Bits g) { return {RelayClass::Partial, {std::move(g), true}}; }

// 2 sources, 2 FC relays
inline NetworkCode fig1() { return NetworkCode::full(2, {{1, 0}, {1, 1}}); }
// 2 sources, 5 FC relays
inline NetworkCode fig3() { return NetworkCode::full(2, {{1, 0}, {1, 0}, {1, 1}, {1, 1}, {0, 1}}); }
// as fig3 with R1, R2 partial
inline NetworkCode fig4() {
    return NetworkCode(2, {pc({1, 0}), pc({1, 0}), fc({1, 1}), fc({1, 1}), fc({0, 1})});
}
// 3 sources, 3 FC relays
inline NetworkCode fig5() { return NetworkCode::full(3, {{1, 0, 1}, {1, 1, 0}, {1, 0, 0}}); }
// as fig5 with R1 partial
inline NetworkCode fig6() { return NetworkCode(3, {pc({1, 0, 1}), fc({1, 1, 0}), fc({1, 0, 0})}); }
// repetition: one source per relay
inline NetworkCode fig7() { return NetworkCode::full(3, {{1, 0, 0}, {1, 0, 0}, {0, 1, 0}}); }
// single all-ones FC relay
inline NetworkCode single_relay(std::size_t ns) { return NetworkCode::full(ns, {ncoop::Bits(ns, 1)}); }

inline ncoop::Scenario iid(const NetworkCode& code, double sigma2 = 1.0) { return ncoop::Scenario::iid(code, sigma2); }

} // namespace fixtures
