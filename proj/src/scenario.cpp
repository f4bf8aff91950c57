#include "ncoop/scenario.hpp"

#include "ncoop/errors.hpp"

namespace ncoop {

Scenario Scenario::make(NetworkCode code, LinkVarianceMap variances) {
    Scenario s{std::move(code), std::move(variances), {}};
    s.policy = EnergyPolicy::uniform(s.code);
    s.validate();
    return s;
}

Scenario Scenario::iid(NetworkCode code, double sigma2) {
    auto var = LinkVarianceMap::iid(code.n_sources(), code.n_relays(), sigma2);
    return make(std::move(code), std::move(var));
}

void Scenario::validate() const {
    if (variances.n_sources() != code.n_sources() || variances.n_relays() != code.n_relays())
        throw InvalidArgument("variance map does not match the network size");
    if (policy.chi_source.size() != code.n_sources() || policy.chi_relay.size() != code.n_relays())
        throw InvalidArgument("energy policy does not match the network size");
    variances.validate();
    policy.validate();
}

Scenario Scenario::fc_subnetwork() const {
    Scenario s;
    s.code = code.fc_subnetwork();
    s.variances = variances.drop_leading_relays(code.n_pc());
    s.policy = policy.drop_leading_relays(code.n_pc());
    s.random_nc = random_nc;
    return s;
}

} // namespace ncoop
