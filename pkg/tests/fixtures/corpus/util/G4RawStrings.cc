#include <string>

// Raw strings hold text that would otherwise look like code or comments.
static const char* kHelp = R"HELP(
usage: g4run [options]
  // this is not a comment
  /* neither is this */

  if (x) { while (y) {} }
)HELP";

const char* Help() { return kHelp; }

int CountSlashes(const std::string& s)
{
  int n = 0;
  for (char c : s) { if (c == '/' || c == '\\') ++n; }
  return n;
}
