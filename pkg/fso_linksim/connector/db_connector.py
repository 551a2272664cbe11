import contextlib
import datetime
import traceback
from typing import Generator

from loguru import logger
from sqlalchemy import DateTime, Index, create_engine, insert, select
from sqlalchemy.orm import DeclarativeBase, Mapped, Session, mapped_column, sessionmaker

from fso_linksim.config import DEFAULT_DB_URL


class FsoDeclBase(DeclarativeBase):
    pass


class SimRun(FsoDeclBase):
    __tablename__ = "sim_runs"

    id: Mapped[int] = mapped_column(primary_key=True, autoincrement=True)
    command: Mapped[str] = mapped_column(nullable=False)
    """Values: simulate / sweep / compare"""
    preset: Mapped[str] = mapped_column(nullable=False)
    seed: Mapped[int] = mapped_column(nullable=False)
    gamma_db_per_km: Mapped[float] = mapped_column(nullable=False)
    range_km: Mapped[float] = mapped_column(nullable=False)
    power_dbm: Mapped[float] = mapped_column(nullable=False)
    total_db: Mapped[float] = mapped_column(nullable=False)
    received_power_dbm: Mapped[float] = mapped_column(nullable=False)
    link_margin_db: Mapped[float] = mapped_column(nullable=False)
    q_factor: Mapped[float] = mapped_column(nullable=False)
    ber_estimate: Mapped[float] = mapped_column(nullable=False)
    config_json: Mapped[str] = mapped_column(nullable=False)  # resolved ScenarioConfig
    created_dt: Mapped[datetime.datetime] = mapped_column(DateTime(timezone=True), nullable=False)

    __table_args__ = (Index("ix_sim_runs_created_dt", "created_dt"),)


RUN_FIELDS = [
    "command",
    "preset",
    "seed",
    "gamma_db_per_km",
    "range_km",
    "power_dbm",
    "total_db",
    "received_power_dbm",
    "link_margin_db",
    "q_factor",
    "ber_estimate",
    "config_json",
    "created_dt",
]


class DbConnector:
    def __init__(self, db_url: str, debug: bool = False) -> None:
        self._db_url = db_url
        self._debug = debug
        if self._debug:
            logger.debug(f"{self.__class__.__name__}: {self._db_url}")
        self._engine = create_engine(self._db_url, echo=self._debug)
        self._Session = sessionmaker(self._engine)

    @contextlib.contextmanager
    def get_session(self) -> Generator[Session, None, None]:
        s = self._Session()
        try:
            yield s
            s.commit()
        except Exception as e:
            s.rollback()
            raise e
        finally:
            s.close()


class FsoDbConnector(DbConnector):
    def __init__(self, db_url: str = "", debug: bool = False) -> None:
        if not db_url:
            db_url = DEFAULT_DB_URL
        super().__init__(db_url=db_url, debug=debug)
        self._init_tables()

    def _init_tables(self) -> None:
        FsoDeclBase.metadata.create_all(bind=self._engine, checkfirst=True)

    def insert_runs(self, run_records: list[dict]) -> bool:
        if not run_records:
            return True
        try:
            with self.get_session() as s:
                s.execute(insert(SimRun), [{k: record[k] for k in RUN_FIELDS} for record in run_records])
        except Exception as e:
            logger.error("Fail to insert sim runs, reason={}".format(str(e)))
            if self._debug:
                logger.debug(traceback.format_exc())
            return False
        else:
            return True

    def get_runs(self, limit: int = 20) -> list[tuple]:
        """Newest first"""
        try:
            with self.get_session() as _session:
                cursor = _session.scalars(select(SimRun).order_by(SimRun.id.desc()).limit(limit))
                return [
                    (data.id,) + tuple(getattr(data, name) for name in RUN_FIELDS)
                    for data in cursor.all()
                ]
        except Exception as e:
            logger.error(str(e))
            return []
