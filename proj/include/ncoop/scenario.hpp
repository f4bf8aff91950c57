#pragma once

#include "ncoop/channel.hpp"
#include "ncoop/netcode.hpp"

namespace ncoop {

/// Physical scenario: code, link variances and energy policy.
struct Scenario {
    NetworkCode code;
    LinkVarianceMap variances;
    EnergyPolicy policy;
    // Draw fresh i.i.d. equiprobable encoding vectors every frame (Monte Carlo only).
    bool random_nc = false;

    /// Uniform energy policy.
    static Scenario make(NetworkCode code, LinkVarianceMap variances);
    static Scenario iid(NetworkCode code, double sigma2);

    /// Checks dimensions, variances and multipliers. Does not validate the code.
    void validate() const;

    /// Drops the partial-cooperative relays with their links and multipliers.
    Scenario fc_subnetwork() const;
};

} // namespace ncoop
