// Prints, for a few standard twisted groups, the component-count polynomial
// of X(s) for every generator s, with its value at a chosen q.
//
//   ./component_census [q]

#include <cstdio>
#include <cstdlib>

#include "dlconn/dlconn.hpp"

using namespace dlconn;

int main(int argc, char** argv) {
  unsigned long long q = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 2;
  struct Row {
    const char* group;
    const char* twist;
  };
  const Row rows[] = {{"A1", "1"},  {"A2", "1"},   {"A3", "1"},  {"B2", "1"},
                      {"G2", "1"},  {"A2", "2A2"}, {"A3", "2A3"}, {"D4", "2D4"},
                      {"D4", "3D4"}};
  std::printf("%-6s %-5s %-4s %-28s %s\n", "group", "twist", "s",
              "components of X(s)", "at q");
  for (const Row& row : rows) {
    auto d = parse_datum(row.group);
    TwistedDatum t = TwistedDatum::make(d, parse_twist(d, row.twist));
    for (int s = 0; s < d->rank(); ++s) {
      WeylElement gen = WeylElement::identity(d).mult_gen_right(s);
      IntPolynomial cc = component_count(t, gen);
      std::printf("%-6s %-5s s%-3d %-28s %s\n", row.group, row.twist, s + 1,
                  cc.to_string().c_str(), evaluate(cc, q).to_string().c_str());
    }
  }
  return 0;
}
