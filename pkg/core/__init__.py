"""
Core functionality per structuration-lab.

Questo modulo contiene:
- Configurazione (config.py)
- Errori di dominio (errors.py)
- Logging (logger.py)
- Contatori eventi (diagnostics_state.py)
- Output CSV/JSON con provenienza (output.py)
"""
