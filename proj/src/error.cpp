#include "cmclab/error.hpp"

namespace cmclab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::InvalidKappa: return "InvalidKappa";
    case ErrorKind::OutOfChart: return "OutOfChart";
    case ErrorKind::NotIsothermal: return "NotIsothermal";
    case ErrorKind::DegenerateImmersion: return "DegenerateImmersion";
    case ErrorKind::DegenerateMetric: return "DegenerateMetric";
    case ErrorKind::ChartExit: return "ChartExit";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::GVanishes: return "GVanishes";
    case ErrorKind::ShootingFailure: return "ShootingFailure";
    case ErrorKind::NoSFamily: return "NoSFamily";
    case ErrorKind::AllMasked: return "AllMasked";
    case ErrorKind::DegenerateA: return "DegenerateA";
    case ErrorKind::DegenerateB: return "DegenerateB";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace cmclab
