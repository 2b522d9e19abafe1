#pragma once

#include <functional>

#include "avtest/protocol/client.hpp"
#include "avtest/scenario/document.hpp"
#include "avtest/sim/world.hpp"

namespace avtest::protocol {

using ScenarioRunner = std::function<scenario::Trajectory(const scenario::ScenarioDocument&)>;

// In-process supervisor: same kernel entry point as the socket server.
ScenarioRunner embedded_runner(sim::KernelOptions options = {});
// One client session per call against a running supervisor.
ScenarioRunner endpoint_runner(Endpoint endpoint, ClientOptions options = {});

}  // namespace avtest::protocol
