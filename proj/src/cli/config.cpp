#include "qck/cli.hpp"

namespace qck::cli {

Deadline RunConfig::deadline() const {
  return deadline_seconds ? Deadline::after_seconds(*deadline_seconds) : Deadline::never();
}

void validate(const RunConfig& c) {
  try {
    quad::validate_field_prime(c.p);
  } catch (const PreconditionError& e) {
    throw UsageError(e.what());
  }
  if (c.deadline_seconds && *c.deadline_seconds < 0) throw UsageError("--deadline must be >= 0");
  if (c.precision_bits < 53 || c.precision_bits > 1 << 20) throw UsageError("--precision must lie in [53, 2^20]");
}

}  // namespace qck::cli
