#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "avtest/controllers/controller.hpp"
#include "avtest/scenario/types.hpp"

namespace avtest::controllers {

bool is_vehicle_controller(std::string_view name);
bool is_pedestrian_controller(std::string_view name);
std::vector<std::string> vehicle_controller_names();

// Builds the controller named by `vehicle.controller` from its arguments and
// the runtime parameters addressed to it. Throws SetupError on an unknown
// name or malformed arguments.
std::shared_ptr<const VehicleController> make_vehicle_controller(
    const scenario::Vehicle& vehicle, const std::vector<scenario::ControllerParameter>& params);

// Parameters delivered to a vehicle: matching vehicle_id, or no id at all.
std::vector<scenario::ControllerParameter> params_for(const scenario::Vehicle& vehicle,
                                                      const std::vector<scenario::ControllerParameter>& all);

}  // namespace avtest::controllers
