#include <iostream>

#include "psds/acceptance.hpp"

int main() {
  const auto results = psds::acceptance::run_all(std::cout);
  return psds::acceptance::all_passed(results) ? 0 : 1;
}
