#include <cmath>

#include "qck/ideals.hpp"

namespace qck::ideals {

std::optional<QuartInt> find_generator(const Ideal& a, const quart::UnitBasis& units, const Deadline& deadline) {
  const std::int64_t p = a.p();
  if (a.is_unit()) return QuartInt::rational(1, p);
  // A generator times a suitable unit has log vector within one fundamental
  // parallelogram of the unit lattice around the balanced point.
  auto m = quart::unit_log_matrix(units);
  double c = std::log(a.norm().get_d()) / 4.0;
  double delta = quart::default_cell_half_side(p);
  auto cells = quart::cover_parallelogram({c, c}, m[0], m[1], delta);
  std::optional<QuartInt> found;
  quart::search_cells(
      a.basis(), a.norm(), cells, delta,
      [&](const QuartInt& x, std::size_t) {
        found = x;
        return false;
      },
      deadline, arith::Real::kDefaultPrecision);
  if (found && !(Ideal::principal(*found) == a))
    throw InternalError("find_generator: element of matching norm does not generate the ideal");
  return found;
}

std::optional<QuartInt> find_generator(const Ideal& a, const Deadline& deadline) {
  return find_generator(a, quart::Field::get(a.p())->units(deadline), deadline);
}

}  // namespace qck::ideals
