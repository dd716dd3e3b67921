#pragma once

#include <string>

#include "ucf/world.hpp"

namespace ucf::cli {

// Robot discs, SEC, target points during formation, axis L and mover paths
// for one round. The view is fitted to the pre and post positions.
std::string render_frame(const RoundRecord& record, const FormationSpec& spec);

// frame_0000.svg ... one per record; creates the directory.
void write_frames(const Trace& trace, const std::string& dir);

}  // namespace ucf::cli
