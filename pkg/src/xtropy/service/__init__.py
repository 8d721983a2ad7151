"""FastAPI service wrapping the core package."""

from .app import app, create_app  # noqa: F401
