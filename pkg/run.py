"""Development entry point.

    python run.py serve        start the HTTP service with uvicorn
    python run.py <command>    any `qdag` CLI command, e.g. `python run.py validate g.dag`
"""

import os
import sys

import uvicorn

# Add the src directory to Python path
src_path = os.path.join(os.path.dirname(__file__), 'src')
sys.path.insert(0, src_path)

from qdag.cli import main  # noqa: E402
from qdag.config import get_settings  # noqa: E402

if __name__ == "__main__":
    if sys.argv[1:2] == ["serve"]:
        settings = get_settings()
        print(f"Starting server on {settings.api_host}:{settings.api_port}...")
        uvicorn.run("qdag.main:app",
                    host=settings.api_host,
                    port=settings.api_port,
                    reload=True,
                    reload_dirs=[os.path.join(src_path, 'qdag')])
    else:
        sys.exit(main(sys.argv[1:]))
