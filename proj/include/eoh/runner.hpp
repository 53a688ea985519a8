#pragma once

#include <map>

#include "eoh/dynamics.hpp"
#include "eoh/schedule.hpp"

namespace eoh {

struct Snapshot {
    double t; // ps, end of the event
    State state;
};

struct RunResult {
    Material material;
    std::vector<std::string> qubit_ids;
    std::vector<Snapshot> trajectory; // includes the initial state at t=0
    State final_state;
    std::optional<dsl::ReadoutEvent> readout; // present iff scheduled
    dsl::ScheduleHeader header;
};

// Executes the events of a validated schedule in order on the all-ground
// initial state. Closed-system evolution; qubit parameters are solved once
// per distinct bias field. Deterministic; the readout event (if any) is
// returned for the caller to sample.
RunResult run_schedule(const dsl::Schedule& schedule, const Grid& grid = {});

// `t_ps,basis_index,re_amp,im_amp` rows for every snapshot.
std::string trajectory_csv(const RunResult& result);

} // namespace eoh
