package fixtures.ingest;

import org.junit.Test;

import static org.junit.Assert.*;

public class IngestIT {
    @Test
    public void testIngest() {
        Ingest ingest = new Ingest();
        int rows = ingest.load("data.csv");
        assertEquals(3, rows);
    }
}
