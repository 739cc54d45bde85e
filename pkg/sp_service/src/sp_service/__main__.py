"""Run the service: ``python -m sp_service`` (port via SP_PORT, model via SP_MODEL)."""

import os

import uvicorn

from .app import create_app


def main() -> None:
    app = create_app()
    uvicorn.run(app, host=os.environ.get("SP_HOST", "0.0.0.0"),
                port=int(os.environ.get("SP_PORT", "8081")))


if __name__ == "__main__":
    main()
