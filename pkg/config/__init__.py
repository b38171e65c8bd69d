# config/__init__.py
from .settings import HesseSettings, get_settings
