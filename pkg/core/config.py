"""
Configurazione per structuration-lab usando pydantic-settings.

Raccoglie tutte le soglie numeriche (IPF, Jacobi, varimax, binning) e i default
del corpus. La CLI usa `CliConfig`, che ignora le variabili d'ambiente: ogni
valore deve arrivare dai flag, così la provenienza scritta negli output è completa.
"""
import logging
from typing import Any, Dict, Literal, Optional, Tuple, Type

from dotenv import load_dotenv
from pydantic import Field
from pydantic_settings import BaseSettings, PydanticBaseSettingsSource, SettingsConfigDict

# Carica .env
load_dotenv()

logger = logging.getLogger(__name__)


class LabConfig(BaseSettings):
    """Configurazione completa del laboratorio."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore"
    )

    # Info
    lab_name: str = Field(default="structuration-lab", description="Nome del tool (provenienza)")
    lab_version: str = Field(default="1.0.0", description="Versione del tool (provenienza)")

    # IPF / interaction information
    ipf_tol: float = Field(default=1e-10, gt=0.0, description="Residuo L∞ massimo sui marginali bivariati")
    ipf_max_iter: int = Field(default=10_000, ge=1, description="Cicli IPF massimi (XY→XZ→YZ)")
    interaction_clamp_tol: float = Field(
        default=1e-9,
        ge=0.0,
        description="Valori negativi di I entro questa soglia vengono riportati a 0 senza warning"
    )

    # Autovalori (Jacobi ciclico)
    jacobi_tol: float = Field(default=1e-14, gt=0.0, description="Soglia relativa norma fuori-diagonale")
    jacobi_max_sweeps: int = Field(default=100, ge=1, description="Sweep di Jacobi massimi")

    # Rotazione
    varimax_tol: float = Field(default=1e-12, gt=0.0, description="Guadagno minimo del criterio per sweep")
    varimax_max_iter: int = Field(default=500, ge=1, description="Sweep varimax massimi")
    kaiser_normalization: bool = Field(default=True, description="Normalizzazione di Kaiser delle righe")

    # Analisi fattoriale
    n_components: int = Field(default=3, ge=1, description="Componenti estratte")
    correlation_basis: Literal["correlation", "covariance"] = Field(
        default="correlation",
        description="Matrice di input dell'analisi fattoriale"
    )
    zero_variance_policy: Literal["drop", "raise"] = Field(
        default="drop",
        description="Colonne a varianza nulla: scarta con warning oppure errore"
    )

    # Corpus
    word_threshold: int = Field(default=2, ge=0, description="Parole tenute se occorrenze totali > soglia")
    author_threshold: int = Field(default=1, ge=0, description="Autori tenuti se occorrenze totali > soglia")
    stopwords_path: Optional[str] = Field(default=None, description="File YAML stopwords alternativo")

    # Binning
    binning_tau: float = Field(default=0.1, gt=0.0, description="Soglia |loading| per il bin centrale")

    # Simulazione
    rng_block_size: int = Field(default=4096, ge=1, le=1_000_000, description="Uniformi estratte per blocco")

    def provenance(self) -> Dict[str, Any]:
        """Snapshot serializzabile della configurazione (ordinato per chiave)."""
        return dict(sorted(self.model_dump(mode="json").items()))

    def validate_config(self) -> bool:
        """Valida la coerenza tra parametri correlati."""
        errors = []

        if self.n_components < 3:
            errors.append(f"N_COMPONENTS={self.n_components}: il binning richiede almeno 3 componenti")

        if self.stopwords_path is not None and not self.stopwords_path.strip():
            errors.append("STOPWORDS_PATH vuoto")

        if errors:
            error_msg = "❌ Configurazione lab non valida:\n" + "\n".join(f"  - {error}" for error in errors)
            logger.error(error_msg)
            raise ValueError(error_msg)

        logger.debug("✅ Configurazione lab validata con successo")
        return True


class CliConfig(LabConfig):
    """Configurazione della CLI: solo argomenti espliciti, nessun override da ambiente o .env."""

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: Type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> Tuple[PydanticBaseSettingsSource, ...]:
        return (init_settings,)


# Istanza globale configurazione
_config: Optional[LabConfig] = None


def get_config() -> LabConfig:
    """Ottiene istanza configurazione (singleton)."""
    global _config
    if _config is None:
        _config = LabConfig()
        _config.validate_config()
    return _config


def set_config(config: Optional[LabConfig]) -> None:
    """Sostituisce il singleton (CLI e test); None forza la ricostruzione."""
    global _config
    if config is not None:
        config.validate_config()
    _config = config
