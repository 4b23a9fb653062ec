#pragma once

#include <map>
#include <memory>
#include <string>

#include "avdiag/annot/types.hpp"
#include "avdiag/eval/backend.hpp"

namespace avdiag::eval {

// Deterministic reference behaviors reifying the failure classes observed in
// evaluated models. Outputs are fixed templates over ground truth and labels.
enum class StubBehavior {
    synced_prior,  // always claims synchronization / describes plausible audio
    oracle,        // reads ground truth and answers correctly
    hallucinator,  // describes the expected sound regardless of the audio
    dodger,        // visual-only description, never engages with audio
};

const char* to_string(StubBehavior b);
StubBehavior stub_behavior_from_string(const std::string& s);

// Consensus labels by base clip id; stubs use them for event texts.
using LabelMap = std::map<std::string, annot::EventTimeLabel>;

std::unique_ptr<ModelBackend> make_stub(StubBehavior behavior, LabelMap labels);

}  // namespace avdiag::eval
