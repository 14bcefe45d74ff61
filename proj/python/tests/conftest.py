import os
import sys

# Under ctest the package comes from the build tree; drop any editable-install
# finder that would otherwise shadow it.
if os.environ.get("MICROWRAP_STAGED"):
    sys.meta_path[:] = [f for f in sys.meta_path if "editable" not in type(f).__module__]
    sys.path.insert(0, os.environ["MICROWRAP_STAGED"])
