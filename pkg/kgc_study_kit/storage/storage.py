import os
from pathlib import Path

from kgc_study_kit.errors import StudyIOError
from kgc_study_kit.output_json import dumps_canonical
from kgc_study_kit.utils.logger import setup_logger

logger = setup_logger()


class ArtifactStore:
    """
    Writes study artifacts under a local directory and, when KGC_GCS_BUCKET is
    set, mirrors what was written to Google Cloud Storage so grades, scores
    and reports can be published with the study.
    """

    def __init__(self, base_path, bucket_name=None, prefix=None):
        self.base_path = Path(base_path)
        self.bucket_name = (bucket_name if bucket_name is not None else os.getenv("KGC_GCS_BUCKET", "")).strip()
        self.prefix = (prefix if prefix is not None else os.getenv("KGC_GCS_PREFIX", "kgc-study-kit")).strip("/")
        self.written: list[Path] = []
        self.client = None
        self.bucket = None

        if self.bucket_name:
            try:
                from google.cloud import storage

                self.client = storage.Client()
                self.bucket = self.client.bucket(self.bucket_name)
                logger.info(f"GCS enabled → bucket: {self.bucket_name}")
            except Exception as e:
                logger.error(f"Could not init GCS client: {e}")
        else:
            logger.debug("GCS disabled (no KGC_GCS_BUCKET). Running local-only.")

    # ---------- ALWAYS write locally ----------
    def save_text(self, rel_path, content: str) -> Path:
        path = self.base_path / rel_path
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            with open(path, "w", encoding="utf-8", newline="\n") as f:
                f.write(content)
        except OSError as e:
            raise StudyIOError(f"cannot write {path}: {e}") from e
        self.written.append(path)
        return path

    def save_json(self, rel_path, document: dict) -> Path:
        return self.save_text(rel_path, dumps_canonical(document))

    # ---------- MIRROR written artifacts → GCS ----------
    def upload_artifacts(self) -> int:
        if not self.bucket:
            logger.debug("Skipping GCS upload: bucket not configured.")
            return 0

        to_upload = []
        for local_path in self.written:
            try:
                rel_path = local_path.relative_to(self.base_path).as_posix()
            except ValueError:
                rel_path = local_path.name
            to_upload.append((local_path, f"{self.prefix}/{rel_path}" if self.prefix else rel_path))

        logger.info(f"Uploading {len(to_upload)} file(s) to gs://{self.bucket_name}/{self.prefix}/")

        uploaded = 0
        for local_path, remote_path in to_upload:
            try:
                blob = self.bucket.blob(remote_path)
                blob.upload_from_filename(str(local_path))
                uploaded += 1
                logger.info(f"Uploaded → gs://{self.bucket_name}/{remote_path}")
            except Exception as e:
                logger.error(f"Upload failed ({local_path}): {e}")

        logger.info(f"Upload complete: {uploaded}/{len(to_upload)} file(s) mirrored to GCS.")
        return uploaded
