#pragma once

namespace mrsusp {

/// Entry point behind the `mrsusp` binary; exposed so tests can drive the
/// command surface in-process. Returns 0 on success, nonzero with a
/// diagnostic on stderr otherwise.
int cli_main(int argc, const char* const* argv);

}  // namespace mrsusp
