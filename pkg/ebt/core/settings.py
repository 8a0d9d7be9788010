from dotenv import load_dotenv
from os import getenv

load_dotenv()


class Settings:
    # =========================
    # Project metadata
    # =========================
    PROJECT_NAME: str = "ebt"
    VERSION: str = "0.1.0"
    # Top-level "schema" field of every JSON payload and cache entry.
    SCHEMA: str = "ebt/1"

    # =========================
    # Logging
    # =========================
    LOG_LEVEL: str = getenv("LOG_LEVEL", "WARNING")

    # =========================
    # Presentation cache
    # =========================
    CACHE_DIR: str | None = getenv("EBT_CACHE_DIR")
    PRESENTATION_CACHE_SIZE: int = int(getenv("EBT_PRESENTATION_CACHE_SIZE", "64"))
    HECKE_CACHE_SIZE: int = int(getenv("EBT_HECKE_CACHE_SIZE", "4096"))

    # =========================
    # Hecke scale guard
    # =========================
    HECKE_MAX_N: int = int(getenv("EBT_HECKE_MAX_N", "3"))
    HECKE_MAX_ELL: int = int(getenv("EBT_HECKE_MAX_ELL", "7"))

    # =========================
    # Verification bounds
    # =========================
    PMAX_DEFAULT: int = int(getenv("EBT_PMAX_DEFAULT", "13"))
    NMAX_DEFAULT: int = int(getenv("EBT_NMAX_DEFAULT", "15"))
    # Dimension 3 presentations are an order of magnitude larger.
    P3MAX_DEFAULT: int = int(getenv("EBT_P3MAX_DEFAULT", "7"))
    N3MAX_DEFAULT: int = int(getenv("EBT_N3MAX_DEFAULT", "9"))
    N3MAX_COMPARE: int = int(getenv("EBT_N3MAX_COMPARE", "7"))
    # Largest prime accepted by the lemma suite.
    LEMMA_PMAX: int = int(getenv("EBT_LEMMA_PMAX", "31"))


settings = Settings()
