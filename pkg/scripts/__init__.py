# Intentionally empty. Makes scripts a Python package so `python -m scripts...` works.
