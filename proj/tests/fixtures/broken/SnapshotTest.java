package fixtures.snapshot;

import org.junit.Test;

import static org.junit.Assert.*;

public class SnapshotTest {
    private SqlManager sqlMng = new SqlManager();

    @Test//Assert Pre-condition
    public void testPoll(){
       Snapshot s = sqlMng.createSnapshot();
       assertNotNull(s);
       String v = s.poll();
       assertEquals("8/22/2022",v);}
}
