"""
Download of the US Code annual historical archives into a checksummed cache
"""
import datetime as dt
import hashlib
import logging
from pathlib import Path
from typing import Dict, Iterable, Mapping, Optional

import requests
from requests.adapters import HTTPAdapter
from urllib3.util.retry import Retry

from .errors import FetchError, IntegrityError, ParameterError
from .models import FetchEntry, FetchManifest

logger = logging.getLogger(__name__)

ARCHIVE_URL = "https://uscode.house.gov/download/annualhistoricalarchives/XHTML/{year}.zip"
FIRST_ARCHIVE_YEAR = 1994
MANIFEST_NAME = "uscode-manifest.json"
CHUNK_SIZE = 1 << 20


def sha256_file(path: str | Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(CHUNK_SIZE), b""):
            digest.update(chunk)
    return digest.hexdigest()


def make_session(retries: int = 3, backoff: float = 1.0) -> requests.Session:
    """Session retrying connection errors and 429/5xx responses"""
    retry = Retry(
        total=retries,
        backoff_factor=backoff,
        status_forcelist=(429, 500, 502, 503, 504),
        allowed_methods=("GET",),
    )
    session = requests.Session()
    session.mount("https://", HTTPAdapter(max_retries=retry))
    session.mount("http://", HTTPAdapter(max_retries=retry))
    return session


def _check_year(year: int) -> None:
    last = dt.date.today().year
    if not FIRST_ARCHIVE_YEAR <= year <= last:
        raise ParameterError(f"No US Code archive for {year}; available {FIRST_ARCHIVE_YEAR}-{last}")


def load_fetch_manifest(cache_dir: Path) -> FetchManifest:
    path = cache_dir / MANIFEST_NAME
    if not path.exists():
        return FetchManifest()
    return FetchManifest.model_validate_json(path.read_text(encoding="utf-8"))


def _download(session: requests.Session, url: str, target: Path, timeout: float) -> None:
    partial = target.with_suffix(target.suffix + ".part")
    try:
        with session.get(url, stream=True, timeout=timeout) as response:
            response.raise_for_status()
            with open(partial, "wb") as f:
                for chunk in response.iter_content(CHUNK_SIZE):
                    f.write(chunk)
    except requests.RequestException as e:
        partial.unlink(missing_ok=True)
        raise FetchError(f"Download of {url} failed: {e}") from e
    partial.replace(target)


def fetch_uscode(
    years: Iterable[int],
    cache_dir: str | Path,
    expected: Optional[Mapping[int, str]] = None,
    session: Optional[requests.Session] = None,
    timeout: float = 60.0,
) -> Dict[int, Path]:
    """Archive path per year; cached archives are verified and never downloaded again"""
    years = sorted(set(years))
    for year in years:
        _check_year(year)
    expected = expected or {}
    cache_dir = Path(cache_dir)
    cache_dir.mkdir(parents=True, exist_ok=True)
    manifest = load_fetch_manifest(cache_dir)
    session = session or make_session()

    paths: Dict[int, Path] = {}
    for year in years:
        target = cache_dir / f"uscode-{year}.zip"
        known = manifest.entries.get(year)
        if target.exists() and known is not None:
            checksum = sha256_file(target)
            if checksum != known.sha256:
                raise IntegrityError(f"Cached archive {target} does not match its recorded checksum")
            logger.info("%d: cached (%s)", year, target.name)
            paths[year] = target
            continue

        url = ARCHIVE_URL.format(year=year)
        logger.info("%d: downloading %s", year, url)
        _download(session, url, target, timeout)
        checksum = sha256_file(target)
        if year in expected and expected[year] != checksum:
            target.unlink()
            raise IntegrityError(f"Archive for {year} has checksum {checksum}, expected {expected[year]}")
        manifest.entries[year] = FetchEntry(
            year=year, url=url, file=target.name, sha256=checksum, size=target.stat().st_size,
        )
        (cache_dir / MANIFEST_NAME).write_text(manifest.model_dump_json(indent=2), encoding="utf-8")
        paths[year] = target
    return paths
